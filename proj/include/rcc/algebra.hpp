#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcc {

// Canonical order of the base relations. It is fixed once and governs
// deterministic iteration and tie-breaking everywhere in this library.
enum class Rel8 : uint8_t { dc = 0, ec, po, eq, tpp, ntpp, tppi, ntppi };
enum class Rel5 : uint8_t { dr = 0, po, eq, pp, ppi };

enum class Kind : uint8_t { rcc8 = 0, rcc5 = 1 };

inline constexpr int kNumRel8 = 8;
inline constexpr int kNumRel5 = 5;
inline constexpr int num_base(Kind k) { return k == Kind::rcc8 ? kNumRel8 : kNumRel5; }

const char* name(Rel8 r);
const char* name(Rel5 r);
std::string rel_name(Kind kind, uint8_t code);

Rel8 parse_rel8(const std::string& s);  // throws std::invalid_argument
Rel5 parse_rel5(const std::string& s);
uint8_t parse_rel(Kind kind, const std::string& s);

Rel8 converse(Rel8 r);
Rel5 converse(Rel5 r);
uint8_t converse(Kind kind, uint8_t code);

bool symmetric(Rel8 r);
bool symmetric(Rel5 r);

// dc,ec -> dr; tpp,ntpp -> pp; tppi,ntppi -> ppi; po -> po; eq -> eq.
Rel5 coarsen(Rel8 r);

struct KindMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A subset of the base relations of one kind, stored as a bitmask in
// canonical order. Structural equality; the empty set signals an
// inconsistent constraint.
struct RelSet {
  Kind kind = Kind::rcc8;
  uint8_t bits = 0;

  RelSet() = default;
  RelSet(Kind k, uint8_t b) : kind(k), bits(b) {}

  static RelSet empty(Kind k) { return {k, 0}; }
  static RelSet full(Kind k) {
    return {k, static_cast<uint8_t>((1u << num_base(k)) - 1)};
  }
  static RelSet single(Rel8 r) { return {Kind::rcc8, static_cast<uint8_t>(1u << int(r))}; }
  static RelSet single(Rel5 r) { return {Kind::rcc5, static_cast<uint8_t>(1u << int(r))}; }
  static RelSet single(Kind k, uint8_t code) { return {k, static_cast<uint8_t>(1u << code)}; }

  bool contains(uint8_t code) const { return bits & (1u << code); }
  bool contains(Rel8 r) const { return kind == Kind::rcc8 && contains(uint8_t(r)); }
  bool contains(Rel5 r) const { return kind == Kind::rcc5 && contains(uint8_t(r)); }
  void add(uint8_t code) { bits |= uint8_t(1u << code); }
  void remove(uint8_t code) { bits &= uint8_t(~(1u << code)); }
  bool is_empty() const { return bits == 0; }
  bool is_full() const { return *this == full(kind); }
  int size() const;
  bool subset_of(const RelSet& o) const { return kind == o.kind && (bits & ~o.bits) == 0; }

  // Members in canonical order.
  std::vector<uint8_t> members() const;

  friend bool operator==(const RelSet&, const RelSet&) = default;
};

RelSet intersect(const RelSet& a, const RelSet& b);  // throws KindMismatch
RelSet unite(const RelSet& a, const RelSet& b);
RelSet converse(const RelSet& s);

// Composition-table lookup; eq is handled as the algebraic identity
// since it has no row or column in the embedded tables.
RelSet compose(Rel8 a, Rel8 b);
RelSet compose(Rel5 a, Rel5 b);
RelSet compose(Kind kind, uint8_t a, uint8_t b);

// Pointwise union of base compositions; monotone in both arguments.
RelSet compose_sets(const RelSet& a, const RelSet& b);  // throws KindMismatch

// Raw table data (49 entries for RCC8, 16 for RCC5), exposed so the
// integrity audit can run against substituted fixtures in tests.
struct CompositionTables {
  // Indexed by non-eq relation index (canonical order with eq removed).
  uint8_t rcc8[7][7];
  uint8_t rcc5[4][4];
};
const CompositionTables& embedded_tables();

int noneq_index(Rel8 r);  // position of r in the canonical order with eq removed
int noneq_index(Rel5 r);

struct TableReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Audits table data: compose(r, eq) = {r} = compose(eq, r), and
// converse(compose(r, s)) = compose(converse(s), converse(r)).
TableReport table_meta_check();
TableReport table_meta_check_on(const CompositionTables& tables);

}  // namespace rcc
