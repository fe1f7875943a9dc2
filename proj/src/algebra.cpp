#include "rcc/algebra.hpp"

#include <bit>

namespace rcc {

namespace {

constexpr const char* kNames8[kNumRel8] = {"dc", "ec", "po", "eq", "tpp", "ntpp", "tppi", "ntppi"};
constexpr const char* kNames5[kNumRel5] = {"dr", "po", "eq", "pp", "ppi"};

// Non-eq relations in canonical order; row/column order of the stored tables.
constexpr Rel8 kNonEq8[7] = {Rel8::dc, Rel8::ec, Rel8::po, Rel8::tpp, Rel8::ntpp, Rel8::tppi, Rel8::ntppi};
constexpr Rel5 kNonEq5[4] = {Rel5::dr, Rel5::po, Rel5::pp, Rel5::ppi};

constexpr uint8_t bit(Rel8 r) { return uint8_t(1u << int(r)); }
constexpr uint8_t bit(Rel5 r) { return uint8_t(1u << int(r)); }

constexpr uint8_t set8() { return 0; }
template <typename... R>
constexpr uint8_t set8(Rel8 r, R... rest) { return bit(r) | set8(rest...); }
constexpr uint8_t set5() { return 0; }
template <typename... R>
constexpr uint8_t set5(Rel5 r, R... rest) { return bit(r) | set5(rest...); }

constexpr uint8_t kAll8 = uint8_t((1u << kNumRel8) - 1);
constexpr uint8_t kAll5 = uint8_t((1u << kNumRel5) - 1);

using enum Rel8;
constexpr Rel5 dr5 = Rel5::dr, po5 = Rel5::po, eq5 = Rel5::eq, pp5 = Rel5::pp, ppi5 = Rel5::ppi;

// Composition table for RCC8, transcribed entry by entry.
// Rows and columns in the order dc, ec, po, tpp, ntpp, tppi, ntppi.
constexpr uint8_t kTable8[7][7] = {
    // row dc
    {kAll8,
     set8(dc, ec, po, tpp, ntpp),
     set8(dc, ec, po, tpp, ntpp),
     set8(dc, ec, po, tpp, ntpp),
     set8(dc, ec, po, tpp, ntpp),
     set8(dc),
     set8(dc)},
    // row ec
    {set8(dc, ec, po, tppi, ntppi),
     set8(dc, ec, po, tpp, tppi, eq),
     set8(dc, ec, po, tpp, ntpp),
     set8(ec, po, tpp, ntpp),
     set8(po, tpp, ntpp),
     set8(dc, ec),
     set8(dc)},
    // row po
    {set8(dc, ec, po, tppi, ntppi),
     set8(dc, ec, po, tppi, ntppi),
     kAll8,
     set8(po, tpp, ntpp),
     set8(po, tpp, ntpp),
     set8(dc, ec, po, tppi, ntppi),
     set8(dc, ec, po, tppi, ntppi)},
    // row tpp
    {set8(dc),
     set8(dc, ec),
     set8(dc, ec, po, tpp, ntpp),
     set8(tpp, ntpp),
     set8(ntpp),
     set8(dc, ec, po, tpp, tppi, eq),
     set8(dc, ec, po, tppi, ntppi)},
    // row ntpp
    {set8(dc),
     set8(dc),
     set8(dc, ec, po, tpp, ntpp),
     set8(ntpp),
     set8(ntpp),
     set8(dc, ec, po, tpp, ntpp),
     kAll8},
    // row tppi
    {set8(dc, ec, po, tppi, ntppi),
     set8(ec, po, tppi, ntppi),
     set8(po, tppi, ntppi),
     set8(po, eq, tpp, tppi),
     set8(po, tpp, ntpp),
     set8(tppi, ntppi),
     set8(ntppi)},
    // row ntppi
    {set8(dc, ec, po, tppi, ntppi),
     set8(po, tppi, ntppi),
     set8(po, tppi, ntppi),
     set8(po, tppi, ntppi),
     set8(po, eq, tpp, ntpp, tppi, ntppi),
     set8(ntppi),
     set8(ntppi)},
};

// Composition table for RCC5, rows/columns in the order dr, po, pp, ppi.
constexpr uint8_t kTable5[4][4] = {
    // row dr
    {kAll5, set5(dr5, po5, pp5), set5(dr5, po5, pp5), set5(dr5)},
    // row po
    {set5(dr5, po5, ppi5), kAll5, set5(po5, pp5), set5(dr5, po5, ppi5)},
    // row pp
    {set5(dr5), set5(dr5, po5, pp5), set5(pp5), kAll5},
    // row ppi
    {set5(dr5, po5, ppi5), set5(po5, ppi5), set5(eq5, po5, pp5, ppi5), set5(ppi5)},
};

const CompositionTables kEmbedded = [] {
  CompositionTables t{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) t.rcc8[i][j] = kTable8[i][j];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.rcc5[i][j] = kTable5[i][j];
  return t;
}();

}  // namespace

const char* name(Rel8 r) { return kNames8[int(r)]; }
const char* name(Rel5 r) { return kNames5[int(r)]; }

std::string rel_name(Kind kind, uint8_t code) {
  return kind == Kind::rcc8 ? kNames8[code] : kNames5[code];
}

Rel8 parse_rel8(const std::string& s) {
  for (int i = 0; i < kNumRel8; ++i)
    if (s == kNames8[i]) return Rel8(i);
  throw std::invalid_argument("unknown RCC8 relation: " + s);
}

Rel5 parse_rel5(const std::string& s) {
  for (int i = 0; i < kNumRel5; ++i)
    if (s == kNames5[i]) return Rel5(i);
  throw std::invalid_argument("unknown RCC5 relation: " + s);
}

uint8_t parse_rel(Kind kind, const std::string& s) {
  return kind == Kind::rcc8 ? uint8_t(parse_rel8(s)) : uint8_t(parse_rel5(s));
}

Rel8 converse(Rel8 r) {
  switch (r) {
    case Rel8::tpp: return Rel8::tppi;
    case Rel8::tppi: return Rel8::tpp;
    case Rel8::ntpp: return Rel8::ntppi;
    case Rel8::ntppi: return Rel8::ntpp;
    default: return r;  // dc, ec, po symmetric; eq is the identity
  }
}

Rel5 converse(Rel5 r) {
  switch (r) {
    case Rel5::pp: return Rel5::ppi;
    case Rel5::ppi: return Rel5::pp;
    default: return r;
  }
}

uint8_t converse(Kind kind, uint8_t code) {
  return kind == Kind::rcc8 ? uint8_t(converse(Rel8(code))) : uint8_t(converse(Rel5(code)));
}

bool symmetric(Rel8 r) { return converse(r) == r; }
bool symmetric(Rel5 r) { return converse(r) == r; }

Rel5 coarsen(Rel8 r) {
  switch (r) {
    case Rel8::dc:
    case Rel8::ec: return Rel5::dr;
    case Rel8::po: return Rel5::po;
    case Rel8::eq: return Rel5::eq;
    case Rel8::tpp:
    case Rel8::ntpp: return Rel5::pp;
    case Rel8::tppi:
    case Rel8::ntppi: return Rel5::ppi;
  }
  throw std::logic_error("coarsen: bad relation");
}

int RelSet::size() const { return std::popcount(unsigned(bits)); }

std::vector<uint8_t> RelSet::members() const {
  std::vector<uint8_t> out;
  for (int i = 0; i < num_base(kind); ++i)
    if (contains(uint8_t(i))) out.push_back(uint8_t(i));
  return out;
}

RelSet intersect(const RelSet& a, const RelSet& b) {
  if (a.kind != b.kind) throw KindMismatch("intersect: kind mismatch");
  return {a.kind, uint8_t(a.bits & b.bits)};
}

RelSet unite(const RelSet& a, const RelSet& b) {
  if (a.kind != b.kind) throw KindMismatch("unite: kind mismatch");
  return {a.kind, uint8_t(a.bits | b.bits)};
}

RelSet converse(const RelSet& s) {
  RelSet out{s.kind, 0};
  for (int i = 0; i < num_base(s.kind); ++i)
    if (s.contains(uint8_t(i))) out.add(converse(s.kind, uint8_t(i)));
  return out;
}

int noneq_index(Rel8 r) {
  for (int i = 0; i < 7; ++i)
    if (kNonEq8[i] == r) return i;
  return -1;  // eq
}

int noneq_index(Rel5 r) {
  for (int i = 0; i < 4; ++i)
    if (kNonEq5[i] == r) return i;
  return -1;
}

RelSet compose(Rel8 a, Rel8 b) {
  if (a == Rel8::eq) return RelSet::single(b);
  if (b == Rel8::eq) return RelSet::single(a);
  return {Kind::rcc8, kTable8[noneq_index(a)][noneq_index(b)]};
}

RelSet compose(Rel5 a, Rel5 b) {
  if (a == Rel5::eq) return RelSet::single(b);
  if (b == Rel5::eq) return RelSet::single(a);
  return {Kind::rcc5, kTable5[noneq_index(a)][noneq_index(b)]};
}

RelSet compose(Kind kind, uint8_t a, uint8_t b) {
  return kind == Kind::rcc8 ? compose(Rel8(a), Rel8(b)) : compose(Rel5(a), Rel5(b));
}

RelSet compose_sets(const RelSet& a, const RelSet& b) {
  if (a.kind != b.kind) throw KindMismatch("compose_sets: kind mismatch");
  RelSet out{a.kind, 0};
  for (uint8_t r : a.members())
    for (uint8_t s : b.members()) out = unite(out, compose(a.kind, r, s));
  return out;
}

namespace {

uint8_t eq_code(Kind kind) { return kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq); }

// The audit recomputes everything from the raw table argument so that a
// deliberately corrupted fixture is caught.
void audit_kind(Kind kind, const CompositionTables& t, TableReport& rep) {
  const int n = kind == Kind::rcc8 ? 7 : 4;
  auto entry = [&](int i, int j) -> RelSet {
    return {kind, kind == Kind::rcc8 ? t.rcc8[i][j] : t.rcc5[i][j]};
  };
  auto code_of = [&](int i) -> uint8_t {
    return kind == Kind::rcc8 ? uint8_t(kNonEq8[i]) : uint8_t(kNonEq5[i]);
  };
  auto idx_of = [&](uint8_t code) -> int {
    return kind == Kind::rcc8 ? noneq_index(Rel8(code)) : noneq_index(Rel5(code));
  };
  // compose(r, eq) = {r} and compose(eq, r) = {r} hold by construction of
  // compose(); record them as checked identities over every base relation.
  for (int i = 0; i < num_base(kind); ++i) {
    const uint8_t r = uint8_t(i);
    if (compose(kind, r, uint8_t(eq_code(kind))) != RelSet::single(kind, r))
      rep.violations.push_back(rel_name(kind, r) + " o eq != {" + rel_name(kind, r) + "}");
    if (compose(kind, uint8_t(eq_code(kind)), r) != RelSet::single(kind, r))
      rep.violations.push_back("eq o " + rel_name(kind, r) + " != {" + rel_name(kind, r) + "}");
  }
  // converse(compose(r, s)) = compose(converse(s), converse(r)) on table data.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const uint8_t r = code_of(i), s = code_of(j);
      const RelSet lhs = converse(entry(i, j));
      const uint8_t sc = converse(kind, s), rc = converse(kind, r);
      const RelSet rhs = entry(idx_of(sc), idx_of(rc));
      if (lhs != rhs)
        rep.violations.push_back("converse(" + rel_name(kind, r) + " o " + rel_name(kind, s) +
                                 ") != converse(" + rel_name(kind, s) + ") o converse(" +
                                 rel_name(kind, r) + ")");
      // every base composition must be non-empty
      if (entry(i, j).is_empty())
        rep.violations.push_back("empty entry at " + rel_name(kind, r) + " o " + rel_name(kind, s));
    }
  }
}

}  // namespace

const CompositionTables& embedded_tables() { return kEmbedded; }

TableReport table_meta_check() { return table_meta_check_on(kEmbedded); }

TableReport table_meta_check_on(const CompositionTables& tables) {
  TableReport rep;
  audit_kind(Kind::rcc8, tables, rep);
  audit_kind(Kind::rcc5, tables, rep);
  return rep;
}

}  // namespace rcc
