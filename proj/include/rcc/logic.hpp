#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rcc/algebra.hpp"
#include "rcc/solver.hpp"
#include "rcc/structures.hpp"

namespace rcc {

// Formulas are hash-consed into a global arena; FId identifies a node.
// Core connectives are tru/var/neg/conj/box over a base relation; all
// other operators are sugar kept in the tree so printing is faithful.
using FId = int;

enum class FOp : uint8_t { tru, var, neg, conj, box, disj, impl, iff, diamond, nom };

// Modalities: a base relation of the formula's alphabet or one of the
// defined operators (u, d, pp, ppi and the grid-walking macros).
enum class MacroMod : uint8_t { none = 0, u, d, pp, ppi, next, prev, right, up, left, down };

struct FormulaNode {
  FOp op;
  Kind kind;
  MacroMod macro = MacroMod::none;  // for box/diamond when not a base relation
  uint8_t base_rel = 0;             // for box/diamond when macro == none
  FId a = -1, b = -1;
  std::string name;  // var
};

const FormulaNode& fnode(FId id);

FId f_true(Kind k);
FId f_false(Kind k);  // sugar for !true
FId f_var(Kind k, const std::string& name);
FId f_not(FId a);
FId f_and(FId a, FId b);
FId f_or(FId a, FId b);
FId f_implies(FId a, FId b);
FId f_iff(FId a, FId b);
FId f_box(uint8_t rel, FId a);
FId f_diamond(uint8_t rel, FId a);
FId f_box_m(MacroMod m, FId a);      // throws for RCC8-only macros under RCC5
FId f_diamond_m(MacroMod m, FId a);
FId f_nom(FId a);
FId f_and_all(Kind k, const std::vector<FId>& conjuncts);  // left fold; empty -> true
FId f_or_all(Kind k, const std::vector<FId>& disjuncts);   // empty -> false

Kind formula_kind(FId id);
std::set<std::string> vars_of(FId id);
int formula_size(FId id);  // nodes of the tree (sugar counted as written)

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& what, size_t pos) : std::runtime_error(what), position(pos) {}
};

FId parse_formula(const std::string& text, Kind kind);
std::string print_formula(FId id);

// Rewrites every sugar operator to the tru/var/neg/conj/box core,
// following the defined-operator equations of the modal language.
FId expand(FId id);

// ---------------------------------------------------------------------------
// Model checking

// Truth at a region; unknown regions or variables denote the empty set.
bool check(const RegionStructure& s, const Valuation& v, const std::string& region, FId phi);
bool valid_in(const RegionStructure& s, const Valuation& v, FId phi);
std::optional<std::string> sat_in(const RegionStructure& s, const Valuation& v, FId phi);

// Extension of phi as a bitmask over region indices (structure size <= 64).
uint64_t extension(const RegionStructure& s, const Valuation& v, FId phi);

// ---------------------------------------------------------------------------
// Bounded satisfiability over finite region structures

struct SatWitness {
  RegionStructure structure;
  Valuation valuation;
  std::string region;
};

// Complete search over all valid structures with at most max_regions
// regions (max 6) and all valuations of phi's variables; the witness is
// the first in canonical order (structures lexicographic, then valuation
// bits variable-major with false first, then region index).
std::optional<SatWitness> bounded_sat(FId phi, int max_regions);

// The constraint-network encoding: /\ dia_u(p_i ∧ <r> p_j) ∧ /\ nom(p_i);
// relation-set constraints become disjunctions over the members.
FId network_to_formula(const ConstraintNetwork& n);

// ---------------------------------------------------------------------------
// Axiom schemata for the logic of all region structures

// Schema ids: "k", "disjoint", "composition", "symmetry", "inverse",
// "s5-t", "s5-4", "s5-b", "eq", "nom-nonempty", "nom-unique".
std::vector<std::string> axiom_schemas();

struct AxiomParams {
  std::vector<uint8_t> rels;       // base relation codes, as the schema needs
  std::vector<FId> formulas;       // instantiation formulas
  std::vector<std::string> nominals;  // nominal variable names
};

FId axiom_instance(Kind kind, const std::string& schema, const AxiomParams& params);

// Side condition of the cov rule: premise must be i -> phi with the
// nominal i absent from phi.
bool rule_cov_check(FId premise, const std::string& nominal);

}  // namespace rcc
