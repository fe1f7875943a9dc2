#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rcc/algebra.hpp"
#include "rcc/geometry.hpp"
#include "rcc/structures.hpp"

namespace rcc {

// Variables with relation-set constraints over ordered pairs (i,j), i<j.
// An absent pair means the full set; empty sets are rejected on input.
struct ConstraintNetwork {
  Kind kind = Kind::rcc8;
  std::vector<std::string> vars;
  std::map<std::pair<int, int>, RelSet> constraints;

  int var_index(const std::string& name) const;
  RelSet constraint(int i, int j) const;  // converse-coherent for i > j
  // Intersects with any existing constraint; throws on empty result or
  // on a self-constraint that excludes eq.
  void add_constraint(const std::string& a, const std::string& b, const RelSet& rels);
  // Drop full sets so that closed networks have one canonical form.
  void canonicalize();

  friend bool operator==(const ConstraintNetwork&, const ConstraintNetwork&) = default;
};

ConstraintNetwork ec_k_network(int k);

struct Inconsistent {
  int i = -1, j = -1;  // pair whose set became empty
  friend bool operator==(const Inconsistent&, const Inconsistent&) = default;
};

// Algebraic closure (path consistency): greatest fixpoint of
// rel(i,k) <- rel(i,k) n compose_sets(rel(i,j), rel(j,k)).
// Idempotent; refines only; Inconsistent is a value, not an error.
std::variant<ConstraintNetwork, Inconsistent> a_closure(const ConstraintNetwork& n);

struct SatResult {
  // Atomic refinement over the merged variable classes. Regions are named
  // after each class's first variable in input order.
  RegionStructure refinement;
  std::vector<int> var_to_region;  // original variable -> region index
};

// Backtracking over base relations per pair, pruned by a_closure.
// eq-constraints between distinct variables are handled by merging.
// Deterministic: canonical relation order, lexicographic pair order,
// smallest domain first.
std::optional<SatResult> satisfiable_rs(const ConstraintNetwork& n);

struct SearchExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ForkModel {
  ForkFrame frame;
  std::vector<ForkRegion> regions;  // aligned with the structure's regions
};

// Finds a fork-frame assignment whose rel_fork matrix reproduces the
// input exactly. Iterative deepening on the fork count, capped at
// v(v-1)/2 + v; overflow raises SearchExhausted and never means Unsat.
ForkModel realize_forks(const RegionStructure& atomic);

// Maps fork i to coordinate i: Right -> [i, i+1/4], Left -> [i-1/4, i],
// Both -> [i-g_i, i+g_i] with g_i in (1/4, 1/3) ranked by containment.
std::vector<IntervalUnion> embed_reals(const ForkModel& model);

struct Realization {
  RegionStructure refinement;
  std::vector<int> var_to_region;
  ForkModel forks;
  std::vector<IntervalUnion> intervals;  // per refinement region

  const IntervalUnion& intervals_for_var(int v) const { return intervals[size_t(var_to_region[size_t(v)])]; }
};

// satisfiable_rs -> realize_forks -> embed_reals, with the geometry
// oracle check (induced matrix == refinement) asserted on the result.
std::optional<Realization> realize(const ConstraintNetwork& n);

}  // namespace rcc
