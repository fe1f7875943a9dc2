#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rcc/algebra.hpp"
#include "rcc/geometry.hpp"

namespace rcc {

// Finite complete relational structure over one relation vocabulary.
// Every cell holds a base relation; networks with uncertainty live in the
// solver, not here.
struct RegionStructure {
  Kind kind = Kind::rcc8;
  std::vector<std::string> regions;
  std::vector<uint8_t> matrix;  // row-major, base-relation codes

  RegionStructure() = default;
  RegionStructure(Kind k, std::vector<std::string> ids);

  int size() const { return int(regions.size()); }
  uint8_t rel(int i, int j) const { return matrix[size_t(i) * regions.size() + size_t(j)]; }
  void set_rel(int i, int j, uint8_t r) { matrix[size_t(i) * regions.size() + size_t(j)] = r; }
  int index_of(const std::string& id) const;  // -1 when absent

  friend bool operator==(const RegionStructure&, const RegionStructure&) = default;
};

// Propositional valuation: variable name -> set of region ids.
using Valuation = std::map<std::string, std::set<std::string>>;

struct Violation {
  enum class Type { diagonal, identity_off_diagonal, converse, triangle };
  Type type;
  int i = -1, j = -1, k = -1;
  std::string message;
};

// Checks diagonal eq, no off-diagonal eq, converse coherence, and every
// composition-table triangle. All violations are reported, none thrown.
std::vector<Violation> validate(const RegionStructure& s);
bool valid(const RegionStructure& s);

RegionStructure induced(const std::vector<IntervalUnion>& regions,
                        const std::vector<std::string>& ids);
RegionStructure induced(const std::vector<HyperRect>& regions,
                        const std::vector<std::string>& ids);
RegionStructure induced(const ForkFrame& frame, const std::vector<ForkRegion>& regions,
                        const std::vector<std::string>& ids);
RegionStructure induced_rcc5(const std::vector<IntervalUnion>& regions,
                             const std::vector<std::string>& ids);

RegionStructure substructure(const RegionStructure& s, const std::vector<std::string>& subset);

// RCC5 structure of finite sets under the subset/overlap/disjoint reading.
RegionStructure powerset_rcc5(const std::vector<std::set<int>>& atom_sets,
                              const std::vector<std::string>& ids);

struct SupReport {
  struct Entry {
    std::vector<int> subset;  // region indices, size 2 or 3
    bool has_sup = false;
    int sup = -1;
  };
  std::vector<Entry> entries;
  bool all_have_sup() const;
};

// For every region subset of size 2 or 3, reports whether some region is
// a least upper bound that also respects disjointness (the Sup conditions).
SupReport check_sup_property(const RegionStructure& s, int max_subset = 3);

// Streams all valid structures on k labeled regions in lexicographic
// order of the off-diagonal cells (pairs ordered (0,1),(0,2),...,(1,2),...,
// relations in canonical order). Returns the number emitted; the callback
// may return false to stop early.
long long enumerate_structures(Kind kind, int k,
                               const std::function<bool(const RegionStructure&)>& fn);
std::vector<RegionStructure> enumerate_structures(Kind kind, int k);

}  // namespace rcc
