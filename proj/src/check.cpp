#include <algorithm>
#include <map>

#include "rcc/logic.hpp"

namespace rcc {

namespace {

// Evaluates a core formula's extension as a bitmask over regions.
struct ModelEval {
  const RegionStructure& s;
  std::map<std::string, uint64_t> var_masks;
  std::vector<std::vector<uint64_t>> nb;  // nb[rel][i] = regions r-related to i
  std::map<FId, uint64_t> memo;
  uint64_t all;

  ModelEval(const RegionStructure& str, const Valuation& v) : s(str) {
    const int n = s.size();
    if (n > 64) throw std::invalid_argument("model checking supports at most 64 regions");
    all = n == 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1;
    for (const auto& [var, ids] : v) {
      uint64_t m = 0;
      for (const auto& id : ids) {
        int i = s.index_of(id);
        if (i >= 0) m |= uint64_t(1) << i;  // unknown region ids denote nothing
      }
      var_masks[var] = m;
    }
    nb.assign(size_t(num_base(s.kind)), std::vector<uint64_t>(size_t(n), 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) nb[s.rel(i, j)][size_t(i)] |= uint64_t(1) << j;
  }

  uint64_t eval(FId id) {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const auto& node = fnode(id);
    uint64_t out = 0;
    switch (node.op) {
      case FOp::tru:
        out = all;
        break;
      case FOp::var: {
        auto vit = var_masks.find(node.name);
        out = vit == var_masks.end() ? 0 : vit->second;  // unknown variable: empty
        break;
      }
      case FOp::neg:
        out = all & ~eval(node.a);
        break;
      case FOp::conj:
        out = eval(node.a) & eval(node.b);
        break;
      case FOp::box: {
        uint64_t body = eval(node.a);
        const auto& masks = nb[node.base_rel];
        for (int i = 0; i < s.size(); ++i)
          if ((masks[size_t(i)] & ~body) == 0) out |= uint64_t(1) << i;
        break;
      }
      default:
        throw std::logic_error("eval: formula is not in core form");
    }
    memo[id] = out;
    return out;
  }
};

}  // namespace

uint64_t extension(const RegionStructure& s, const Valuation& v, FId phi) {
  if (formula_kind(phi) != s.kind) throw KindMismatch("formula alphabet does not match structure");
  ModelEval ev(s, v);
  return ev.eval(expand(phi));
}

bool check(const RegionStructure& s, const Valuation& v, const std::string& region, FId phi) {
  int i = s.index_of(region);
  if (i < 0) throw std::invalid_argument("unknown region: " + region);
  return extension(s, v, phi) >> i & 1;
}

bool valid_in(const RegionStructure& s, const Valuation& v, FId phi) {
  ModelEval ev(s, v);
  if (formula_kind(phi) != s.kind) throw KindMismatch("formula alphabet does not match structure");
  return ev.eval(expand(phi)) == ev.all;
}

std::optional<std::string> sat_in(const RegionStructure& s, const Valuation& v, FId phi) {
  uint64_t ext = extension(s, v, phi);
  for (int i = 0; i < s.size(); ++i)
    if (ext >> i & 1) return s.regions[size_t(i)];
  return std::nullopt;
}

FId network_to_formula(const ConstraintNetwork& n) {
  const Kind kind = n.kind;
  std::vector<FId> parts;
  for (const auto& [pair, rels] : n.constraints) {
    FId pi = f_var(kind, "p_" + n.vars[size_t(pair.first)]);
    FId pj = f_var(kind, "p_" + n.vars[size_t(pair.second)]);
    std::vector<FId> dias;
    for (uint8_t r : rels.members()) dias.push_back(f_diamond(r, pj));
    parts.push_back(f_diamond_m(MacroMod::u, f_and(pi, f_or_all(kind, dias))));
  }
  for (const auto& var : n.vars) parts.push_back(f_nom(f_var(kind, "p_" + var)));
  return f_and_all(kind, parts);
}

// ---------------------------------------------------------------------------
// Axiom schemata

std::vector<std::string> axiom_schemas() {
  return {"k",  "disjoint", "composition", "symmetry",     "inverse",
          "s5-t", "s5-4",     "s5-b",        "eq",           "nom-nonempty",
          "nom-unique"};
}

FId axiom_instance(Kind kind, const std::string& schema, const AxiomParams& p) {
  auto need_rels = [&](size_t n) {
    if (p.rels.size() < n) throw std::invalid_argument("schema " + schema + " needs relations");
  };
  auto need_fs = [&](size_t n) {
    if (p.formulas.size() < n) throw std::invalid_argument("schema " + schema + " needs formulas");
  };
  auto need_nom = [&](size_t n) {
    if (p.nominals.size() < n) throw std::invalid_argument("schema " + schema + " needs nominals");
  };
  if (schema == "k") {
    need_rels(1);
    need_fs(2);
    FId a = p.formulas[0], b = p.formulas[1];
    return f_implies(f_box(p.rels[0], f_implies(a, b)),
                     f_implies(f_box(p.rels[0], a), f_box(p.rels[0], b)));
  }
  if (schema == "disjoint") {
    need_rels(2);
    need_nom(1);
    if (p.rels[0] == p.rels[1]) throw std::invalid_argument("disjoint schema needs r1 != r2");
    FId i = f_var(kind, p.nominals[0]);
    return f_implies(f_diamond(p.rels[0], i), f_not(f_diamond(p.rels[1], i)));
  }
  if (schema == "composition") {
    need_rels(2);
    need_fs(1);
    FId a = p.formulas[0];
    RelSet comp = compose(kind, p.rels[0], p.rels[1]);
    std::vector<FId> dias;
    for (uint8_t q : comp.members()) dias.push_back(f_diamond(q, a));
    return f_implies(f_diamond(p.rels[0], f_diamond(p.rels[1], a)), f_or_all(kind, dias));
  }
  if (schema == "symmetry") {
    need_rels(1);
    need_fs(1);
    if (converse(kind, p.rels[0]) != p.rels[0])
      throw std::invalid_argument("symmetry schema needs a symmetric relation");
    return f_implies(p.formulas[0], f_box(p.rels[0], f_diamond(p.rels[0], p.formulas[0])));
  }
  if (schema == "inverse") {
    need_rels(2);
    need_fs(1);
    if (converse(kind, p.rels[0]) != p.rels[1])
      throw std::invalid_argument("inverse schema needs an inverse pair");
    return f_implies(p.formulas[0], f_box(p.rels[0], f_diamond(p.rels[1], p.formulas[0])));
  }
  if (schema == "s5-t") {
    need_fs(1);
    return f_implies(f_box_m(MacroMod::u, p.formulas[0]), p.formulas[0]);
  }
  if (schema == "s5-4") {
    need_fs(1);
    FId bu = f_box_m(MacroMod::u, p.formulas[0]);
    return f_implies(bu, f_box_m(MacroMod::u, bu));
  }
  if (schema == "s5-b") {
    need_fs(1);
    return f_implies(p.formulas[0],
                     f_box_m(MacroMod::u, f_diamond_m(MacroMod::u, p.formulas[0])));
  }
  if (schema == "eq") {
    need_fs(1);
    uint8_t eq = kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
    return f_iff(f_box(eq, p.formulas[0]), p.formulas[0]);
  }
  if (schema == "nom-nonempty") {
    need_nom(1);
    return f_diamond_m(MacroMod::u, f_var(kind, p.nominals[0]));
  }
  if (schema == "nom-unique") {
    need_nom(1);
    need_fs(1);
    FId i = f_var(kind, p.nominals[0]);
    return f_implies(f_diamond_m(MacroMod::u, f_and(i, p.formulas[0])),
                     f_box_m(MacroMod::u, f_implies(i, p.formulas[0])));
  }
  throw std::invalid_argument("unknown axiom schema: " + schema);
}

}  // namespace rcc
