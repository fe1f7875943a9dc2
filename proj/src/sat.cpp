// Bounded satisfiability over finite region structures: a small DPLL
// engine over a propositional encoding of (structure, valuation) pairs.
// The static decision order mirrors the canonical enumeration order, so
// the first model found is the lexicographically first witness.

#include <algorithm>
#include <map>

#include "rcc/logic.hpp"

namespace rcc {

namespace {

// literal encoding: 2*v positive, 2*v+1 negative
inline int pos(int v) { return 2 * v; }
inline int neg_of(int lit) { return lit ^ 1; }
inline int var_of(int lit) { return lit >> 1; }
inline bool lit_sign(int lit) { return (lit & 1) == 0; }

struct MiniSat {
  int nvars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::vector<int>> watches;  // per literal: clause indices
  std::vector<int8_t> val;                // -1 unassigned / 0 false / 1 true
  std::vector<int> trail;
  size_t qhead = 0;
  bool unsat = false;

  int new_var() {
    val.push_back(-1);
    watches.emplace_back();
    watches.emplace_back();
    return nvars++;
  }

  bool lit_true(int lit) const { return val[size_t(var_of(lit))] == (lit_sign(lit) ? 1 : 0); }
  bool lit_false(int lit) const { return val[size_t(var_of(lit))] == (lit_sign(lit) ? 0 : 1); }
  bool lit_unset(int lit) const { return val[size_t(var_of(lit))] == -1; }

  void add_clause(std::vector<int> lits) {
    // drop duplicate literals; detect tautologies
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
      if (lits[i + 1] == neg_of(lits[i])) return;
    if (lits.empty()) { unsat = true; return; }
    if (lits.size() == 1) {
      if (!enqueue(lits[0])) unsat = true;
      return;
    }
    int idx = int(clauses.size());
    clauses.push_back(lits);
    watches[size_t(lits[0])].push_back(idx);
    watches[size_t(lits[1])].push_back(idx);
  }

  bool enqueue(int lit) {
    if (lit_false(lit)) return false;
    if (lit_true(lit)) return true;
    val[size_t(var_of(lit))] = lit_sign(lit) ? 1 : 0;
    trail.push_back(lit);
    return true;
  }

  // two-watched-literal propagation; false on conflict
  bool propagate() {
    while (qhead < trail.size()) {
      int lit = trail[qhead++];
      int flit = neg_of(lit);  // literal that became false
      auto& ws = watches[size_t(flit)];
      size_t keep = 0;
      for (size_t n = 0; n < ws.size(); ++n) {
        int ci = ws[n];
        auto& c = clauses[size_t(ci)];
        if (c[0] == flit) std::swap(c[0], c[1]);
        // c[1] == flit now
        if (lit_true(c[0])) { ws[keep++] = ci; continue; }
        bool moved = false;
        for (size_t i = 2; i < c.size(); ++i) {
          if (!lit_false(c[i])) {
            std::swap(c[1], c[i]);
            watches[size_t(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (!enqueue(c[0])) {
          for (size_t m = n + 1; m < ws.size(); ++m) ws[keep++] = ws[m];
          ws.resize(keep);
          return false;
        }
      }
      ws.resize(keep);
    }
    return true;
  }

  void shrink_trail(size_t size) {
    while (trail.size() > size) {
      val[size_t(var_of(trail.back()))] = -1;
      trail.pop_back();
    }
    qhead = trail.size();
  }
};

struct PairInfo {
  int i, j;
  std::vector<int> atoms;  // variable per non-eq relation, canonical order
};

struct Encoder {
  Kind kind;
  int k;
  MiniSat sat;
  int true_var;
  std::vector<uint8_t> noneq;  // non-eq relation codes, canonical order
  std::vector<PairInfo> pairs;
  std::map<std::pair<int, int>, int> pair_index;
  std::vector<std::string> fvars;               // formula variables, sorted
  std::vector<std::vector<int>> val_vars;       // [var][region]
  std::map<std::pair<FId, int>, int> tseitin;   // (core node, region) -> literal

  Encoder(Kind kd, int kk, const std::set<std::string>& formula_vars) : kind(kd), k(kk) {
    true_var = sat.new_var();
    sat.add_clause({pos(true_var)});
    uint8_t eq = kd == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
    for (uint8_t r = 0; r < num_base(kd); ++r)
      if (r != eq) noneq.push_back(r);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        PairInfo p{i, j, {}};
        for (size_t r = 0; r < noneq.size(); ++r) p.atoms.push_back(sat.new_var());
        pair_index[{i, j}] = int(pairs.size());
        pairs.push_back(std::move(p));
      }
    fvars.assign(formula_vars.begin(), formula_vars.end());
    for (const auto& v : fvars) {
      (void)v;
      std::vector<int> regs;
      for (int i = 0; i < k; ++i) regs.push_back(sat.new_var());
      val_vars.push_back(std::move(regs));
    }
    encode_structure_axioms();
  }

  int noneq_pos(uint8_t code) const {
    for (size_t i = 0; i < noneq.size(); ++i)
      if (noneq[i] == code) return int(i);
    return -1;
  }

  // literal asserting rel(i,j) = code (code != eq, i != j)
  int rel_lit(int i, int j, uint8_t code) const {
    if (i > j) { std::swap(i, j); code = converse(kind, code); }
    return pos(pairs[size_t(pair_index.at({i, j}))].atoms[size_t(noneq_pos(code))]);
  }

  void encode_structure_axioms() {
    for (const auto& p : pairs) {
      std::vector<int> alo;
      for (int a : p.atoms) alo.push_back(pos(a));
      sat.add_clause(alo);
      for (size_t x = 0; x < p.atoms.size(); ++x)
        for (size_t y = x + 1; y < p.atoms.size(); ++y)
          sat.add_clause({neg_of(pos(p.atoms[x])), neg_of(pos(p.atoms[y]))});
    }
    uint8_t eq = kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) {
          if (i == j || j == l || i == l) continue;
          for (uint8_t r : noneq)
            for (uint8_t s : noneq) {
              RelSet comp = compose(kind, r, s);
              std::vector<int> cl{neg_of(rel_lit(i, j, r)), neg_of(rel_lit(j, l, s))};
              for (uint8_t q : comp.members())
                if (q != eq) cl.push_back(rel_lit(i, l, q));
              sat.add_clause(std::move(cl));
            }
        }
  }

  int formula_lit(FId id, int region) {
    auto key = std::make_pair(id, region);
    auto it = tseitin.find(key);
    if (it != tseitin.end()) return it->second;
    const auto& n = fnode(id);
    int lit = 0;
    switch (n.op) {
      case FOp::tru:
        lit = pos(true_var);
        break;
      case FOp::var: {
        auto vit = std::find(fvars.begin(), fvars.end(), n.name);
        if (vit == fvars.end()) {
          lit = neg_of(pos(true_var));  // unknown variable: false everywhere
        } else {
          lit = pos(val_vars[size_t(vit - fvars.begin())][size_t(region)]);
        }
        break;
      }
      case FOp::neg:
        lit = neg_of(formula_lit(n.a, region));
        break;
      case FOp::conj: {
        int la = formula_lit(n.a, region), lb = formula_lit(n.b, region);
        int t = sat.new_var();
        sat.add_clause({neg_of(pos(t)), la});
        sat.add_clause({neg_of(pos(t)), lb});
        sat.add_clause({pos(t), neg_of(la), neg_of(lb)});
        lit = pos(t);
        break;
      }
      case FOp::box: {
        uint8_t eq = kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
        if (n.base_rel == eq) {
          lit = formula_lit(n.a, region);
          break;
        }
        // t <-> for all j: rel(region,j)=r implies body_j, via one
        // witness variable per j for the backward direction
        std::vector<int> wits;
        for (int j = 0; j < k; ++j) {
          if (j == region) continue;
          int m = rel_lit(region, j, n.base_rel);
          int b = formula_lit(n.a, j);
          int w = sat.new_var();
          sat.add_clause({neg_of(pos(w)), m});
          sat.add_clause({neg_of(pos(w)), neg_of(b)});
          sat.add_clause({pos(w), neg_of(m), b});
          wits.push_back(pos(w));
        }
        int t = sat.new_var();
        std::vector<int> back{pos(t)};
        for (int w : wits) {
          sat.add_clause({neg_of(w), neg_of(pos(t))});
          back.push_back(w);
        }
        sat.add_clause(back);
        lit = pos(t);
        break;
      }
      default:
        throw std::logic_error("bounded_sat: formula is not in core form");
    }
    tseitin[key] = lit;
    return lit;
  }
};

struct Decision {
  bool is_pair;
  int index;   // pair index or valuation variable slot (var*k + region)
  int option;  // next option to try
  size_t trail_size;
};

}  // namespace

std::optional<SatWitness> bounded_sat(FId phi, int max_regions) {
  if (max_regions < 1 || max_regions > 6)
    throw std::invalid_argument("bounded_sat: max_regions must be in 1..6");
  const Kind kind = formula_kind(phi);
  const FId core = expand(phi);
  const auto vars = vars_of(phi);

  for (int k = 1; k <= max_regions; ++k) {
    Encoder enc(kind, k, vars);
    std::vector<int> roots;
    for (int i = 0; i < k; ++i) roots.push_back(enc.formula_lit(core, i));
    enc.sat.add_clause(roots);
    if (enc.sat.unsat) continue;

    MiniSat& S = enc.sat;
    if (!S.propagate()) continue;

    const int npairs = int(enc.pairs.size());
    const int nval = int(enc.fvars.size()) * k;
    const int ndecisions = npairs + nval;
    auto option_count = [&](int d) { return d < npairs ? int(enc.noneq.size()) : 2; };
    auto option_lit = [&](int d, int opt) {
      if (d < npairs) return pos(enc.pairs[size_t(d)].atoms[size_t(opt)]);
      int slot = d - npairs;
      int v = enc.val_vars[size_t(slot / k)][size_t(slot % k)];
      return opt == 0 ? neg_of(pos(v)) : pos(v);  // false first
    };
    auto already_decided = [&](int d) {
      if (d < npairs) {
        for (int a : enc.pairs[size_t(d)].atoms)
          if (S.val[size_t(a)] == 1) return true;
        return false;
      }
      int slot = d - npairs;
      return S.val[size_t(enc.val_vars[size_t(slot / k)][size_t(slot % k)])] != -1;
    };

    // chronological DFS in the static decision order; options are tried
    // first-to-last, so the first model is the lexicographically least
    std::vector<Decision> stack;
    int next = 0;
    bool found = false, exhausted = false;
    while (!exhausted && !found) {
      while (next < ndecisions && already_decided(next)) ++next;
      if (next == ndecisions) { found = true; break; }
      int opt = 0;
      bool descended = false;
      while (!descended && !exhausted) {
        while (opt < option_count(next) && S.lit_false(option_lit(next, opt))) ++opt;
        if (opt == option_count(next)) {
          if (stack.empty()) { exhausted = true; break; }
          Decision d = stack.back();
          stack.pop_back();
          S.shrink_trail(d.trail_size);
          next = d.index;
          opt = d.option + 1;
          continue;
        }
        size_t mark = S.trail.size();
        S.enqueue(option_lit(next, opt));
        if (S.propagate()) {
          stack.push_back({next < npairs, next, opt, mark});
          ++next;
          descended = true;
        } else {
          S.shrink_trail(mark);
          ++opt;
        }
      }
    }
    if (!found) continue;

    // extract the witness
    RegionStructure st(kind, [&] {
      std::vector<std::string> ids;
      for (int i = 0; i < k; ++i) ids.push_back("r" + std::to_string(i + 1));
      return ids;
    }());
    for (const auto& p : enc.pairs)
      for (size_t r = 0; r < p.atoms.size(); ++r)
        if (S.val[size_t(p.atoms[r])] == 1) {
          st.set_rel(p.i, p.j, enc.noneq[r]);
          st.set_rel(p.j, p.i, converse(kind, enc.noneq[r]));
        }
    Valuation v;
    for (size_t fv = 0; fv < enc.fvars.size(); ++fv) {
      std::set<std::string> where;
      for (int i = 0; i < k; ++i)
        if (S.val[size_t(enc.val_vars[fv][size_t(i)])] == 1)
          where.insert(st.regions[size_t(i)]);
      v[enc.fvars[fv]] = where;
    }
    uint64_t ext = extension(st, v, phi);
    if (!ext) throw std::logic_error("bounded_sat: extracted model does not satisfy the formula");
    for (int i = 0; i < k; ++i)
      if (ext >> i & 1) {
        std::string region = st.regions[size_t(i)];
        return SatWitness{std::move(st), std::move(v), std::move(region)};
      }
  }
  return std::nullopt;
}

}  // namespace rcc
