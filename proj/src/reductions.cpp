#include "rcc/reductions.hpp"

#include <algorithm>

namespace rcc {

int DominoSystem::tile_index(const std::string& name) const {
  for (size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i] == name) return int(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Tiling search

namespace {

std::optional<Tiling> tile_domain(const DominoSystem& d, bool triangle, int k,
                                  bool want_distinguished) {
  if (k < 0) throw std::invalid_argument("tiling: k must be non-negative");
  if (d.tiles.empty()) throw std::invalid_argument("tiling: no tiles");
  // positions row by row so left and below neighbors are already placed
  std::vector<std::pair<int, int>> order;
  if (triangle) {
    for (int y = 0; y <= k; ++y)
      for (int x = 0; x + y <= k; ++x) order.push_back({x, y});
  } else {
    for (int y = 0; y < k; ++y)
      for (int x = 0; x < k; ++x) order.push_back({x, y});
  }
  Tiling t{triangle, k, {}};
  if (order.empty()) return t;

  const int ntiles = int(d.tiles.size());
  bool has_f0 = false;

  auto rec = [&](auto&& self, size_t at) -> bool {
    if (at == order.size()) return !want_distinguished || !d.f0 || has_f0;
    auto [x, y] = order[at];
    auto left = t.cells.find({x - 1, y});
    auto below = t.cells.find({x, y - 1});
    for (int tile = 0; tile < ntiles; ++tile) {
      if (want_distinguished && d.s0 && x == 0 && y == 0 && tile != *d.s0) continue;
      if (left != t.cells.end() && !d.h.count({left->second, tile})) continue;
      if (below != t.cells.end() && !d.v.count({below->second, tile})) continue;
      t.cells[{x, y}] = tile;
      bool was_f0 = has_f0;
      if (want_distinguished && d.f0 && tile == *d.f0) has_f0 = true;
      if (self(self, at + 1)) return true;
      has_f0 = was_f0;
      t.cells.erase({x, y});
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return t;
}

}  // namespace

std::optional<Tiling> tile_triangle(const DominoSystem& d, int k) {
  return tile_domain(d, true, k, true);
}

std::optional<Tiling> tile_square(const DominoSystem& d, int k) {
  return tile_domain(d, false, k, false);
}

// ---------------------------------------------------------------------------
// Position enumeration

GridPos lambda(long long i) {
  if (i < 1) throw std::invalid_argument("lambda: positions are numbered from 1");
  // indices 1 + d(d+1)/2 .. (d+1)(d+2)/2 hold diagonal d, floor end first
  long long d = 0;
  while ((d + 1) * (d + 2) / 2 < i) ++d;
  long long offset = i - 1 - d * (d + 1) / 2;
  return {int(d - offset), int(offset)};
}

long long lambda_inv(int x, int y) {
  if (x < 0 || y < 0) throw std::invalid_argument("lambda_inv: negative position");
  long long d = x + y;
  return 1 + d * (d + 1) / 2 + y;
}

long long lambda_right(long long i) {
  GridPos p = lambda(i);
  return lambda_inv(p.x + 1, p.y);
}

// ---------------------------------------------------------------------------
// Reduction formulas

namespace {

constexpr Kind K8 = Kind::rcc8;

FId va() { return f_var(K8, "a"); }
FId vb() { return f_var(K8, "b"); }
FId vc() { return f_var(K8, "c"); }
FId vwall() { return f_var(K8, "wall"); }
FId vfloor() { return f_var(K8, "floor"); }
FId vtile(const DominoSystem& d, int t) { return f_var(K8, "p_" + d.tiles[size_t(t)]); }

FId box(Rel8 r, FId x) { return f_box(uint8_t(r), x); }
FId dia(Rel8 r, FId x) { return f_diamond(uint8_t(r), x); }

FId ab() { return f_and(va(), vb()); }

// Formulas (1) to (17) of the quadrant reduction. The step formulas take
// an optional guard so the finite variant can restrict them to regions
// where the step exists at all.
FId chi_51() {
  return f_implies(va(), f_and(f_and(box(Rel8::dc, f_not(va())), box(Rel8::ec, f_not(va()))),
                               box(Rel8::po, f_not(va()))));
}
FId chi_52() { return f_implies(ab(), dia(Rel8::tpp, f_and(va(), f_not(vb())))); }
FId chi_53() { return f_implies(f_and(va(), f_not(vb())), dia(Rel8::tpp, ab())); }
FId chi_54() { return f_implies(f_and(va(), f_not(vb())), box(Rel8::tpp, f_implies(va(), vb()))); }
FId chi_55() { return f_implies(ab(), box(Rel8::tpp, f_implies(va(), f_not(vb())))); }
FId chi_56() { return f_implies(ab(), dia(Rel8::tpp, vc())); }
FId chi_57() { return f_implies(vc(), dia(Rel8::tpp, ab())); }
FId chi_58() {
  FId nc = f_not(vc());
  FId conj = f_and(f_and(f_and(box(Rel8::dc, nc), box(Rel8::ec, nc)), box(Rel8::po, nc)),
                   f_and(box(Rel8::tpp, nc), box(Rel8::tppi, nc)));
  return f_implies(vc(), conj);
}
FId chi_59() { return f_implies(f_and(vfloor(), vwall()), box(Rel8::ntppi, f_not(va()))); }
FId chi_510(FId guard) {
  FId head = guard >= 0 ? f_and(vwall(), guard) : vwall();
  return f_implies(head, f_diamond_m(MacroMod::next, vfloor()));
}
FId chi_511(FId guard) {
  FId head = guard >= 0 ? f_and(vwall(), guard) : vwall();
  return f_implies(head, f_diamond_m(MacroMod::up, vwall()));
}
FId chi_512() {
  return f_or(box(Rel8::ntppi, f_not(va())),
              f_implies(vwall(), f_diamond_m(MacroMod::down, vwall())));
}
FId chi_513(FId guard) {
  FId head = guard >= 0 ? f_and(ab(), guard) : ab();
  return f_implies(head, f_diamond_m(MacroMod::right, f_not(vwall())));
}
FId chi_514() {
  return f_implies(f_and(ab(), f_not(vwall())), f_diamond_m(MacroMod::left, f_true(K8)));
}
FId chi_515(const DominoSystem& d) {
  std::vector<FId> parts;
  for (size_t t = 0; t < d.tiles.size(); ++t)
    for (size_t u = t + 1; u < d.tiles.size(); ++u)
      parts.push_back(f_not(f_and(vtile(d, int(t)), vtile(d, int(u)))));
  return f_and_all(K8, parts);
}
FId chi_516(const DominoSystem& d, FId guard) {
  std::vector<FId> parts;
  for (const auto& [t, u] : d.h)
    parts.push_back(f_and(vtile(d, t), f_diamond_m(MacroMod::right, vtile(d, u))));
  FId head = guard >= 0 ? f_and(ab(), guard) : ab();
  return f_implies(head, f_or_all(K8, parts));
}
FId chi_517(const DominoSystem& d, FId guard) {
  std::vector<FId> parts;
  for (const auto& [t, u] : d.v)
    parts.push_back(f_and(vtile(d, t), f_diamond_m(MacroMod::up, vtile(d, u))));
  FId head = guard >= 0 ? f_and(ab(), guard) : ab();
  return f_implies(head, f_or_all(K8, parts));
}

}  // namespace

FId phi_d(const DominoSystem& d) {
  if (d.tiles.empty()) throw std::invalid_argument("phi_d: no tiles");
  std::vector<FId> chi = {chi_51(),    chi_52(),    chi_53(),  chi_54(),
                          chi_55(),    chi_56(),    chi_57(),  chi_58(),
                          chi_59(),    chi_510(-1), chi_511(-1), chi_512(),
                          chi_513(-1), chi_514(),   chi_515(d), chi_516(d, -1),
                          chi_517(d, -1)};
  FId head = f_and(f_and(f_and(f_and(va(), vb()), vwall()), vfloor()),
                   box(Rel8::ntppi, f_not(va())));
  return f_and(head, f_box_m(MacroMod::u, f_and_all(K8, chi)));
}

FId phi_d_recurring(const DominoSystem& d) {
  if (!d.t0) throw std::invalid_argument("phi_d_recurring: t0 is required");
  FId rec = f_box_m(MacroMod::u,
                    f_implies(ab(), dia(Rel8::ntpp, f_and(f_and(ab(), vwall()), vtile(d, *d.t0)))));
  FId limit = f_box_m(
      MacroMod::u,
      f_implies(box(Rel8::tppi, dia(Rel8::po, va())),
                f_and(f_and(f_not(va()), box(Rel8::tpp, f_not(va()))),
                      box(Rel8::ntpp, f_not(va())))));
  return f_and(f_and(phi_d(d), rec), limit);
}

namespace {

// Frontier handling for the k-triangle variant.
FId chi_71() {
  FId no_right = f_not(f_diamond_m(MacroMod::right, f_true(K8)));
  FId inner_have_right =
      box(Rel8::ntppi, f_implies(ab(), f_diamond_m(MacroMod::right, f_true(K8))));
  return f_implies(f_and(f_and(ab(), no_right), inner_have_right), vfloor());
}
FId chi_72() {
  FId no_right = f_not(f_diamond_m(MacroMod::right, f_true(K8)));
  return f_implies(f_and(ab(), no_right),
                   f_or(f_not(f_diamond_m(MacroMod::next, f_true(K8))),
                        f_diamond_m(MacroMod::next, no_right)));
}
FId chi_73() {
  return f_implies(f_and(ab(), f_not(f_diamond_m(MacroMod::next, f_true(K8)))),
                   f_and(vwall(), box(Rel8::ntpp, f_not(ab()))));
}

}  // namespace

FId phi_d_fin(const DominoSystem& d) {
  if (!d.s0 || !d.f0) throw std::invalid_argument("phi_d_fin: s0 and f0 are required");
  // The chain-extension formulas (2) and (6) are dropped so the region
  // chain may terminate, and each step formula is guarded by the
  // existence of the step it takes; otherwise no finite model could
  // satisfy the conjunction at its frontier regions.
  FId g_right = f_diamond_m(MacroMod::right, f_true(K8));
  FId g_up = f_diamond_m(MacroMod::up, f_true(K8));
  FId g_next = f_diamond_m(MacroMod::next, f_true(K8));
  std::vector<FId> chi = {chi_51(),       chi_53(),           chi_54(),
                          chi_55(),       chi_57(),           chi_58(),
                          chi_59(),       chi_510(g_next),    chi_511(g_up),
                          chi_512(),      chi_513(g_right),   chi_514(),
                          chi_515(d),     chi_516(d, g_right), chi_517(d, g_up),
                          chi_71(),       chi_72(),           chi_73()};
  FId head = f_and(f_and(f_and(f_and(f_and(va(), vb()), vwall()), vfloor()), vtile(d, *d.s0)),
                   box(Rel8::ntppi, f_not(va())));
  FId last = f_or(vtile(d, *d.f0), dia(Rel8::ntpp, f_and(ab(), vtile(d, *d.f0))));
  return f_and(f_and(head, f_box_m(MacroMod::u, f_and_all(K8, chi))), last);
}

int phi_chi_conjuncts(FId phi) {
  std::function<FId(FId)> find_bu = [&](FId id) -> FId {
    const auto& n = fnode(id);
    if (n.op == FOp::box && n.macro == MacroMod::u) return n.a;
    FId res = -1;
    if (n.a >= 0) res = find_bu(n.a);
    if (res < 0 && n.b >= 0) res = find_bu(n.b);
    return res;
  };
  FId chi = find_bu(phi);
  if (chi < 0) return -1;
  std::function<int(FId)> count = [&](FId id) -> int {
    const auto& n = fnode(id);
    if (n.op == FOp::conj) return count(n.a) + count(n.b);
    return 1;
  };
  return count(chi);
}

// ---------------------------------------------------------------------------
// Turing machines

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::vector<std::string> tm_validate(const TuringMachine& m) {
  std::vector<std::string> out;
  if (!has(m.states, m.q0) || !has(m.states, m.qf)) out.push_back("q0/qf not in the state set");
  if (!has(m.alphabet, m.blank) || !has(m.alphabet, m.marker))
    out.push_back("blank/marker not in the alphabet");
  for (const auto& mv : m.delta)
    if (!has(m.states, mv.q) || !has(m.states, mv.q2) || !has(m.alphabet, mv.read) ||
        !has(m.alphabet, mv.write) || (mv.dir != 'L' && mv.dir != 'R'))
      out.push_back("ill-formed transition");
  if (!out.empty()) return out;
  // 1: the initial state is never entered again
  for (const auto& mv : m.delta)
    if (mv.q2 == m.q0) out.push_back("normalization 1: a transition enters q0");
  // 2: stopping only in qf (qf is a sink; every other state is total)
  for (const auto& mv : m.delta)
    if (mv.q == m.qf) out.push_back("normalization 2: qf has outgoing transitions");
  for (const auto& q : m.states) {
    if (q == m.qf) continue;
    for (const auto& s : m.alphabet) {
      bool found = false;
      for (const auto& mv : m.delta)
        if (mv.q == q && mv.read == s) found = true;
      if (!found) out.push_back("normalization 2: no move for state " + q + " reading " + s);
    }
  }
  // 3: halting steps move right
  for (const auto& mv : m.delta)
    if (mv.q2 == m.qf && mv.dir != 'R')
      out.push_back("normalization 3: a transition into qf moves left");
  // 4: the marker must be writable so the halt cell can carry it
  bool writes_marker = false;
  for (const auto& mv : m.delta)
    if (mv.write == m.marker) writes_marker = true;
  if (!writes_marker) out.push_back("normalization 4: the marker symbol is never written");
  // 5: the blank is never written
  for (const auto& mv : m.delta)
    if (mv.write == m.blank) out.push_back("normalization 5: a transition writes the blank");
  return out;
}

DominoSystem tm_to_domino(const TuringMachine& m) {
  auto violations = tm_validate(m);
  if (!violations.empty()) {
    std::string msg = "tm_to_domino: machine fails normalization:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  DominoSystem d;
  auto head_tile = [&](const std::string& q, const std::string& s, char dir) {
    return "(" + q + "," + s + "," + dir + ")";
  };
  auto dagger_tile = [&](const std::string& q, const std::string& s, char dir) {
    return head_tile(q, s, dir) + "+";
  };
  for (const auto& s : m.alphabet) d.tiles.push_back(s);
  for (const auto& q : m.states)
    for (const auto& s : m.alphabet)
      for (char dir : {'L', 'R'}) d.tiles.push_back(head_tile(q, s, dir));
  for (const auto& q : m.states)
    for (const auto& s : m.alphabet)
      for (char dir : {'L', 'R'}) d.tiles.push_back(dagger_tile(q, s, dir));
  d.tiles.push_back("$");

  auto idx = [&](const std::string& name) {
    int i = d.tile_index(name);
    if (i < 0) throw std::logic_error("tm_to_domino: missing tile " + name);
    return i;
  };
  const int pad = idx("$");
  d.s0 = idx(head_tile(m.q0, m.blank, 'L'));
  d.f0 = idx(head_tile(m.qf, m.marker, 'R'));

  // horizontal: column i to column i+1 (consecutive configurations)
  for (const auto& s : m.alphabet) {
    d.h.insert({idx(s), idx(s)});
    d.h.insert({idx(s), pad});
  }
  for (const auto& mv : m.delta)
    for (char dir : {'L', 'R'})
      d.h.insert({idx(head_tile(mv.q, mv.read, dir)), idx(dagger_tile(mv.q2, mv.write, mv.dir))});
  for (const auto& s : m.alphabet)
    for (const auto& q : m.states)
      for (char d1 : {'L', 'R'}) {
        d.h.insert({idx(s), idx(head_tile(q, s, d1))});
        for (const auto& q2 : m.states)
          for (char d2 : {'L', 'R'})
            d.h.insert({idx(dagger_tile(q, s, d1)), idx(head_tile(q2, s, d2))});
        d.h.insert({idx(dagger_tile(q, s, d1)), idx(s)});
        d.h.insert({idx(dagger_tile(q, s, d1)), pad});
      }
  d.h.insert({*d.f0, pad});
  d.h.insert({pad, pad});

  // vertical: cell y to cell y+1 inside one configuration column
  for (const auto& s : m.alphabet)
    for (const auto& s2 : m.alphabet) {
      if (s == m.blank && s2 != m.blank) continue;  // blanks only below blanks
      d.v.insert({idx(s), idx(s2)});
    }
  for (const auto& s : m.alphabet)
    for (const auto& s2 : m.alphabet)
      for (const auto& q : m.states) {
        d.v.insert({idx(s), idx(head_tile(q, s2, 'L'))});
        d.v.insert({idx(head_tile(q, s2, 'R')), idx(s)});
        d.v.insert({idx(dagger_tile(q, s2, 'L')), idx(s)});
        d.v.insert({idx(s), idx(dagger_tile(q, s2, 'R'))});
        d.v.insert({idx(head_tile(q, s, 'L')), idx(dagger_tile(q, s2, 'L'))});
        d.v.insert({idx(dagger_tile(q, s2, 'R')), idx(head_tile(q, s, 'R'))});
      }
  // the initial configuration has no dagger cell: blanks sit directly
  // above the head tile
  d.v.insert({*d.s0, idx(m.blank)});
  d.v.insert({pad, pad});
  return d;
}

// ---------------------------------------------------------------------------
// Domino-ready witness intervals

namespace {

IntervalUnion witness_x(int i) {
  int j = (i + 1) / 2;
  if (i % 2 == 1) return IntervalUnion(Rational(-j), Rational(j));
  return IntervalUnion(Rational(-j), Rational(j + 1));
}

IntervalUnion witness_y(int i) {
  long long j = lambda_right(i);
  return IntervalUnion(Rational(-i), Rational(j));
}

}  // namespace

DomreadyWitness domready_witness(int count) {
  if (count < 1) throw std::invalid_argument("domready_witness: count must be positive");
  DomreadyWitness w;
  for (int i = 1; i <= 2 * count; ++i) w.xs.push_back(witness_x(i));
  for (int i = 1; i <= count; ++i) w.ys.push_back(witness_y(i));
  return w;
}

// ---------------------------------------------------------------------------
// Models from tilings

int tiling_prefix_size(const Tiling& t) {
  int m = 0;
  for (long long i = 1;; ++i) {
    GridPos p = lambda(i);
    if (!t.cells.count({p.x, p.y})) break;
    m = int(i);
  }
  return m;
}

TilingModel model_from_tiling(const DominoSystem& d, const Tiling& t, int m) {
  if (m < 1) throw std::invalid_argument("model_from_tiling: m must be positive");
  for (int i = 1; i <= m; ++i) {
    GridPos p = lambda(i);
    if (!t.cells.count({p.x, p.y}))
      throw std::invalid_argument("model_from_tiling: m exceeds the tiling domain");
  }

  // regions r_i = x_{2i-1}, s_i = x_{2i}, and t_i = y_i wherever the
  // right neighbor is inside the prefix; y_1 = [-1,2] coincides with x_2
  // as a point set and is merged into s_1
  std::vector<std::string> ids;
  std::vector<IntervalUnion> regions;
  std::map<int, std::string> t_name;
  for (int i = 1; i <= m; ++i) {
    ids.push_back("r" + std::to_string(i));
    regions.push_back(witness_x(2 * i - 1));
  }
  for (int i = 1; i < m; ++i) {
    ids.push_back("s" + std::to_string(i));
    regions.push_back(witness_x(2 * i));
  }
  std::vector<int> right_ok;
  for (int i = 1; i <= m; ++i)
    if (lambda_right(i) <= m) right_ok.push_back(i);
  for (int i : right_ok) {
    if (i == 1) {
      t_name[1] = "s1";
      continue;
    }
    t_name[i] = "t" + std::to_string(i);
    ids.push_back(t_name[i]);
    regions.push_back(witness_y(i));
  }

  TilingModel out{induced(regions, ids), {}, "r1"};
  auto& val = out.valuation;
  for (int i = 1; i <= m; ++i) {
    val["a"].insert("r" + std::to_string(i));
    val["b"].insert("r" + std::to_string(i));
    GridPos p = lambda(i);
    if (p.x == 0) val["wall"].insert("r" + std::to_string(i));
    if (p.y == 0) val["floor"].insert("r" + std::to_string(i));
    val["p_" + d.tiles[size_t(t.cells.at({p.x, p.y}))]].insert("r" + std::to_string(i));
  }
  for (int i = 1; i < m; ++i) val["a"].insert("s" + std::to_string(i));
  for (int i : right_ok) val["c"].insert(t_name.at(i));
  return out;
}

}  // namespace rcc
