#include "rcc/solver.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace rcc {

int ConstraintNetwork::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return int(i);
  return -1;
}

RelSet ConstraintNetwork::constraint(int i, int j) const {
  if (i == j) return RelSet::single(kind, kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq));
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = constraints.find({i, j});
  RelSet s = it == constraints.end() ? RelSet::full(kind) : it->second;
  return flip ? converse(s) : s;
}

void ConstraintNetwork::add_constraint(const std::string& a, const std::string& b,
                                       const RelSet& rels) {
  if (rels.kind != kind) throw KindMismatch("constraint kind does not match network");
  if (rels.is_empty()) throw std::invalid_argument("empty constraint set");
  int i = var_index(a), j = var_index(b);
  if (i < 0 || j < 0) throw std::invalid_argument("constraint over unknown variable");
  if (i == j) {
    uint8_t eq = kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
    if (!rels.contains(eq))
      throw std::invalid_argument("self-constraint on " + a + " excludes eq");
    return;  // trivially true
  }
  RelSet s = i < j ? rels : converse(rels);
  if (i > j) std::swap(i, j);
  auto it = constraints.find({i, j});
  RelSet merged = it == constraints.end() ? s : intersect(it->second, s);
  if (merged.is_empty())
    throw std::invalid_argument("contradictory constraints on " + a + "," + b);
  constraints[{i, j}] = merged;
}

void ConstraintNetwork::canonicalize() {
  for (auto it = constraints.begin(); it != constraints.end();)
    it = it->second.is_full() ? constraints.erase(it) : std::next(it);
}

ConstraintNetwork ec_k_network(int k) {
  if (k < 1) throw std::invalid_argument("ec_k_network: k must be positive");
  ConstraintNetwork n;
  n.kind = Kind::rcc8;
  for (int i = 1; i <= k; ++i) n.vars.push_back("x" + std::to_string(i));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) n.constraints[{i, j}] = RelSet::single(Rel8::ec);
  return n;
}

std::variant<ConstraintNetwork, Inconsistent> a_closure(const ConstraintNetwork& n) {
  const int v = int(n.vars.size());
  std::vector<RelSet> m(size_t(v) * size_t(v), RelSet::full(n.kind));
  auto at = [&](int i, int j) -> RelSet& { return m[size_t(i) * size_t(v) + size_t(j)]; };
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < v; ++j) at(i, j) = n.constraint(i, j);

  std::deque<std::pair<int, int>> queue;
  std::set<std::pair<int, int>> queued;
  auto push = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == j) return;
    if (queued.insert({i, j}).second) queue.push_back({i, j});
  };
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) push(i, j);

  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    queued.erase({i, j});
    for (int k = 0; k < v; ++k) {
      if (k == i || k == j) continue;
      // refine (i,k) through j and (k,j) through i
      RelSet r1 = intersect(at(i, k), compose_sets(at(i, j), at(j, k)));
      if (r1 != at(i, k)) {
        if (r1.is_empty()) return Inconsistent{std::min(i, k), std::max(i, k)};
        at(i, k) = r1;
        at(k, i) = converse(r1);
        push(i, k);
      }
      RelSet r2 = intersect(at(k, j), compose_sets(at(k, i), at(i, j)));
      if (r2 != at(k, j)) {
        if (r2.is_empty()) return Inconsistent{std::min(k, j), std::max(k, j)};
        at(k, j) = r2;
        at(j, k) = converse(r2);
        push(k, j);
      }
    }
  }

  ConstraintNetwork out;
  out.kind = n.kind;
  out.vars = n.vars;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (!at(i, j).is_full()) out.constraints[{i, j}] = at(i, j);
  return out;
}

namespace {

uint8_t eq_code(Kind k) { return k == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq); }

// Search state over merged variable classes. `rep` maps each original
// variable to its class; classes are identified by the smallest original
// variable index they contain.
struct SolveState {
  Kind kind;
  std::vector<int> classes;           // active class ids, ascending
  std::map<std::pair<int, int>, RelSet> cons;  // over class ids, first < second
  std::vector<int> rep;               // original var -> class id

  RelSet get(int a, int b) const {
    bool flip = a > b;
    if (flip) std::swap(a, b);
    auto it = cons.find({a, b});
    RelSet s = it == cons.end() ? RelSet::full(kind) : it->second;
    return flip ? converse(s) : s;
  }
  void set(int a, int b, const RelSet& s) {
    if (a > b) {
      cons[{b, a}] = converse(s);
    } else {
      cons[{a, b}] = s;
    }
  }
};

// Path consistency on the class network; false means some set emptied.
bool close_state(SolveState& st) {
  const auto& cls = st.classes;
  std::deque<std::pair<int, int>> queue;
  std::set<std::pair<int, int>> queued;
  auto push = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == b) return;
    if (queued.insert({a, b}).second) queue.push_back({a, b});
  };
  for (size_t x = 0; x < cls.size(); ++x)
    for (size_t y = x + 1; y < cls.size(); ++y) push(cls[x], cls[y]);
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    queued.erase({a, b});
    for (int c : cls) {
      if (c == a || c == b) continue;
      RelSet r1 = intersect(st.get(a, c), compose_sets(st.get(a, b), st.get(b, c)));
      if (r1.is_empty()) return false;
      if (r1 != st.get(a, c)) { st.set(a, c, r1); push(a, c); }
      RelSet r2 = intersect(st.get(c, b), compose_sets(st.get(c, a), st.get(a, b)));
      if (r2.is_empty()) return false;
      if (r2 != st.get(c, b)) { st.set(c, b, r2); push(c, b); }
    }
  }
  return true;
}

// Merge class b into class a (a < b), intersecting constraints.
bool merge_classes(SolveState& st, int a, int b) {
  if (a > b) std::swap(a, b);
  SolveState next = st;
  next.classes.erase(std::find(next.classes.begin(), next.classes.end(), b));
  next.cons.clear();
  for (int x : next.classes)
    for (int y : next.classes) {
      if (x >= y) continue;
      RelSet s = st.get(x, y);
      if (x == a) s = intersect(s, st.get(b, y));
      if (y == a) s = intersect(s, st.get(x, b));
      if (s.is_empty()) return false;
      if (!s.is_full()) next.cons[{x, y}] = s;
    }
  for (auto& r : next.rep)
    if (r == b) r = a;
  st = std::move(next);
  return true;
}

bool solve_rec(SolveState st, SolveState& out) {
  if (!close_state(st)) return false;

  // contract any pair whose set collapsed to {eq}
  const uint8_t eq = eq_code(st.kind);
  for (size_t x = 0; x < st.classes.size(); ++x)
    for (size_t y = x + 1; y < st.classes.size(); ++y) {
      RelSet s = st.get(st.classes[x], st.classes[y]);
      if (s == RelSet::single(st.kind, eq)) {
        if (!merge_classes(st, st.classes[x], st.classes[y])) return false;
        return solve_rec(std::move(st), out);
      }
    }

  // pick the smallest domain > 1, lexicographic pair order breaking ties
  int pa = -1, pb = -1, best = 1 << 10;
  for (size_t x = 0; x < st.classes.size(); ++x)
    for (size_t y = x + 1; y < st.classes.size(); ++y) {
      int sz = st.get(st.classes[x], st.classes[y]).size();
      if (sz > 1 && sz < best) { best = sz; pa = st.classes[x]; pb = st.classes[y]; }
    }
  if (pa < 0) {  // all singletons: atomic and path-consistent, hence a solution
    out = std::move(st);
    return true;
  }
  RelSet dom = st.get(pa, pb);
  for (uint8_t r : dom.members()) {
    SolveState branch = st;
    if (r == eq) {
      if (!merge_classes(branch, pa, pb)) continue;
    } else {
      branch.set(pa, pb, RelSet::single(st.kind, r));
    }
    if (solve_rec(std::move(branch), out)) return true;
  }
  return false;
}

}  // namespace

std::optional<SatResult> satisfiable_rs(const ConstraintNetwork& n) {
  if (n.vars.empty()) throw std::invalid_argument("satisfiable_rs: network has no variables");
  SolveState st;
  st.kind = n.kind;
  st.classes.resize(n.vars.size());
  std::iota(st.classes.begin(), st.classes.end(), 0);
  st.rep = st.classes;
  st.cons = n.constraints;

  // pre-process explicit eq constraints by merging up front
  const uint8_t eq = eq_code(n.kind);
  for (bool again = true; again;) {
    again = false;
    for (size_t x = 0; x < st.classes.size() && !again; ++x)
      for (size_t y = x + 1; y < st.classes.size() && !again; ++y)
        if (st.get(st.classes[x], st.classes[y]) == RelSet::single(n.kind, eq)) {
          if (!merge_classes(st, st.classes[x], st.classes[y])) return std::nullopt;
          again = true;
        }
  }

  SolveState sol;
  sol.kind = n.kind;
  if (!solve_rec(std::move(st), sol)) return std::nullopt;

  SatResult res;
  std::vector<std::string> ids;
  std::map<int, int> class_to_region;
  for (size_t i = 0; i < sol.classes.size(); ++i) {
    class_to_region[sol.classes[i]] = int(i);
    ids.push_back(n.vars[size_t(sol.classes[i])]);
  }
  res.refinement = RegionStructure(n.kind, ids);
  for (size_t x = 0; x < sol.classes.size(); ++x)
    for (size_t y = 0; y < sol.classes.size(); ++y) {
      if (x == y) continue;
      RelSet s = sol.get(sol.classes[x], sol.classes[y]);
      res.refinement.set_rel(int(x), int(y), s.members().at(0));
    }
  for (int r : sol.rep) res.var_to_region.push_back(class_to_region.at(r));
  if (!valid(res.refinement)) throw std::logic_error("satisfiable_rs produced an invalid structure");
  return res;
}

// ---------------------------------------------------------------------------
// Fork realization

namespace {

using Shape = ForkShape;

bool shape_subset(Shape a, Shape b) {
  if (a == Shape::empty || a == b || b == Shape::both) return true;
  return false;
}

bool int_meet(Shape a, Shape b) {
  if (a == Shape::empty || b == Shape::empty) return false;
  if ((a == Shape::left && b == Shape::right) || (a == Shape::right && b == Shape::left))
    return false;
  return true;
}

// A column assigns one shape per region; valid columns respect every
// pair's relation at every fork.
bool column_ok(const RegionStructure& s, const std::vector<Shape>& col) {
  const int n = s.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Shape a = col[size_t(i)], b = col[size_t(j)];
      switch (Rel8(s.rel(i, j))) {
        case Rel8::dc:
          if (a != Shape::empty && b != Shape::empty) return false;
          break;
        case Rel8::ec:
          if (int_meet(a, b)) return false;
          break;
        case Rel8::po:
          break;
        case Rel8::tpp:
          if (!shape_subset(a, b)) return false;
          break;
        case Rel8::ntpp:
          if (a != Shape::empty && b != Shape::both) return false;
          break;
        case Rel8::tppi:
          if (!shape_subset(b, a)) return false;
          break;
        case Rel8::ntppi:
          if (b != Shape::empty && a != Shape::both) return false;
          break;
        case Rel8::eq:
          return false;  // cannot occur in a valid structure
      }
    }
  return true;
}

struct Requirements {
  // one predicate per bit; a column covers a bit when the predicate holds
  std::vector<std::function<bool(const std::vector<Shape>&)>> preds;
};

Requirements build_requirements(const RegionStructure& s) {
  Requirements req;
  const int n = s.size();
  for (int i = 0; i < n; ++i)
    req.preds.push_back([i](const std::vector<Shape>& c) { return c[size_t(i)] != Shape::empty; });
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rel8 r = Rel8(s.rel(i, j));
      int a = i, b = j;
      if (r == Rel8::tppi || r == Rel8::ntppi) {
        std::swap(a, b);
        r = converse(r);
      }
      switch (r) {
        case Rel8::ec:
          req.preds.push_back([a, b](const std::vector<Shape>& c) {
            return c[size_t(a)] != Shape::empty && c[size_t(b)] != Shape::empty;
          });
          break;
        case Rel8::po:
          req.preds.push_back([a, b](const std::vector<Shape>& c) {
            return int_meet(c[size_t(a)], c[size_t(b)]);
          });
          req.preds.push_back([a, b](const std::vector<Shape>& c) {
            return !shape_subset(c[size_t(a)], c[size_t(b)]);
          });
          req.preds.push_back([a, b](const std::vector<Shape>& c) {
            return !shape_subset(c[size_t(b)], c[size_t(a)]);
          });
          break;
        case Rel8::tpp:
          req.preds.push_back([a, b](const std::vector<Shape>& c) {
            return c[size_t(a)] != Shape::empty && c[size_t(b)] != Shape::both;
          });
          req.preds.push_back([a, b](const std::vector<Shape>& c) {
            return c[size_t(a)] != c[size_t(b)];
          });
          break;
        case Rel8::ntpp:
          req.preds.push_back([a, b](const std::vector<Shape>& c) {
            return c[size_t(a)] != c[size_t(b)];
          });
          break;
        default:
          break;
      }
    }
  return req;
}

// Structure order: i part-of j (point sets of i contained in j's).
bool below(const RegionStructure& s, int i, int j) {
  Rel8 r = Rel8(s.rel(i, j));
  return r == Rel8::tpp || r == Rel8::ntpp;
}

// Deterministic gadget cover; used when the column space is too large to
// search. One column per region plus one per ec/po/tpp pair.
std::vector<std::vector<Shape>> gadget_columns(const RegionStructure& s) {
  const int n = s.size();
  auto leq = [&](int i, int j) { return i == j || below(s, i, j); };
  std::vector<std::vector<Shape>> cols;
  for (int u = 0; u < n; ++u) {
    std::vector<Shape> c(size_t(n), Shape::empty);
    for (int w = 0; w < n; ++w)
      if (leq(u, w)) c[size_t(w)] = Shape::both;
    cols.push_back(std::move(c));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int a = i, b = j;
      Rel8 r = Rel8(s.rel(i, j));
      if (r == Rel8::tppi || r == Rel8::ntppi) { std::swap(a, b); r = converse(r); }
      std::vector<Shape> c(size_t(n), Shape::empty);
      switch (r) {
        case Rel8::po:
          for (int w = 0; w < n; ++w)
            if (leq(a, w) || leq(b, w)) c[size_t(w)] = Shape::both;
          break;
        case Rel8::ec:
          for (int w = 0; w < n; ++w) {
            bool ntpp_above = Rel8(s.rel(a, w)) == Rel8::ntpp || Rel8(s.rel(b, w)) == Rel8::ntpp;
            if (ntpp_above || (leq(a, w) && leq(b, w)))
              c[size_t(w)] = Shape::both;
            else if (leq(a, w))
              c[size_t(w)] = Shape::left;
            else if (leq(b, w))
              c[size_t(w)] = Shape::right;
          }
          break;
        case Rel8::tpp:
          for (int w = 0; w < n; ++w) {
            if (Rel8(s.rel(a, w)) == Rel8::ntpp)
              c[size_t(w)] = Shape::both;
            else if (leq(a, w))
              c[size_t(w)] = Shape::left;
          }
          break;
        default:
          continue;
      }
      cols.push_back(std::move(c));
    }
  return cols;
}

std::vector<std::vector<Shape>> all_valid_columns(const RegionStructure& s) {
  const int n = s.size();
  std::vector<std::vector<Shape>> cols;
  std::vector<Shape> cur(size_t(n), Shape::empty);
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == n) {
      bool nonempty = false;
      for (Shape sh : cur)
        if (sh != Shape::empty) { nonempty = true; break; }
      if (nonempty && column_ok(s, cur)) cols.push_back(cur);
      return;
    }
    for (int sh = 0; sh < 4; ++sh) {
      cur[size_t(idx)] = Shape(sh);
      self(self, idx + 1);
    }
    cur[size_t(idx)] = Shape::empty;
  };
  rec(rec, 0);
  return cols;
}

// Minimum set cover by iterative deepening; columns tried in ascending
// enumeration order so the first solution is reproducible.
std::optional<std::vector<int>> min_cover(const std::vector<uint64_t>& covers, uint64_t want,
                                          int max_size) {
  uint64_t reachable = 0;
  for (uint64_t c : covers) reachable |= c;
  if ((want & ~reachable) != 0) return std::nullopt;
  int max_cover = 1;
  for (uint64_t c : covers) max_cover = std::max(max_cover, std::popcount(c & want));

  std::vector<int> chosen;
  std::unordered_set<uint64_t> failed;  // masks proven uncoverable at current budget

  auto rec = [&](auto&& self, uint64_t missing, int budget) -> bool {
    if (!missing) return true;
    if (budget == 0) return false;
    if ((std::popcount(missing) + max_cover - 1) / max_cover > budget) return false;
    if (failed.count(missing)) return false;
    int bit = std::countr_zero(missing);
    for (size_t c = 0; c < covers.size(); ++c) {
      if (!(covers[c] >> bit & 1)) continue;
      chosen.push_back(int(c));
      if (self(self, missing & ~covers[c], budget - 1)) return true;
      chosen.pop_back();
    }
    failed.insert(missing);
    return false;
  };
  for (int f = 1; f <= max_size; ++f) {
    chosen.clear();
    failed.clear();
    if (rec(rec, want, f)) return chosen;
  }
  return std::nullopt;
}

}  // namespace

ForkModel realize_forks(const RegionStructure& atomic) {
  if (atomic.kind != Kind::rcc8) throw KindMismatch("realize_forks expects an RCC8 structure");
  if (!valid(atomic)) throw std::invalid_argument("realize_forks: structure is not valid");
  const int n = atomic.size();
  const int cap = n * (n - 1) / 2 + n;

  std::vector<std::vector<Shape>> cols;
  if (n <= 6) {
    cols = all_valid_columns(atomic);
    Requirements req = build_requirements(atomic);
    if (req.preds.size() > 64) throw SearchExhausted("requirement set too large");
    std::vector<uint64_t> covers(cols.size(), 0);
    for (size_t c = 0; c < cols.size(); ++c)
      for (size_t b = 0; b < req.preds.size(); ++b)
        if (req.preds[b](cols[c])) covers[c] |= uint64_t(1) << b;
    uint64_t want = req.preds.size() == 64 ? ~uint64_t(0)
                                           : (uint64_t(1) << req.preds.size()) - 1;
    auto cover = min_cover(covers, want, cap);
    if (!cover) throw SearchExhausted("no fork assignment within the cap of " + std::to_string(cap));
    std::vector<std::vector<Shape>> picked;
    for (int c : *cover) picked.push_back(cols[size_t(c)]);
    cols = std::move(picked);
  } else {
    cols = gadget_columns(atomic);
    if (int(cols.size()) > cap)
      throw SearchExhausted("gadget construction exceeded the fork cap");
  }

  ForkModel model{ForkFrame(int(cols.size())), {}};
  for (int r = 0; r < n; ++r) {
    std::map<int, ForkShape> shapes;
    for (size_t f = 0; f < cols.size(); ++f)
      if (cols[f][size_t(r)] != Shape::empty) shapes[int(f) + 1] = cols[f][size_t(r)];
    model.regions.emplace_back(model.frame, shapes);
  }

  // contract check: the assignment must reproduce the matrix exactly
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rel8 got = i == j ? Rel8::eq : rel_fork(model.frame, model.regions[size_t(i)], model.regions[size_t(j)]);
      if (got != Rel8(atomic.rel(i, j)))
        throw std::logic_error("realize_forks: verification failed at (" +
                               atomic.regions[size_t(i)] + "," + atomic.regions[size_t(j)] + ")");
    }
  return model;
}

std::vector<IntervalUnion> embed_reals(const ForkModel& model) {
  const int n = int(model.regions.size());
  const int forks = model.frame.fork_count;
  if (n == 0) throw std::invalid_argument("embed_reals: no regions");

  // g values per fork: rank the Both-regions by point-set containment
  std::vector<std::map<int, Rational>> g;
  g.resize(size_t(forks));
  std::vector<ForkPointSet> pts;
  for (const auto& r : model.regions) pts.push_back(r.points());
  for (int f = 0; f < forks; ++f) {
    std::vector<int> both;
    for (int r = 0; r < n; ++r)
      if (model.regions[size_t(r)].shape(f + 1) == ForkShape::both) both.push_back(r);
    // Kahn's algorithm over strict containment, smallest region index first
    std::vector<int> order;
    std::vector<bool> done(both.size(), false);
    for (size_t step = 0; step < both.size(); ++step) {
      int pick = -1;
      for (size_t x = 0; x < both.size(); ++x) {
        if (done[x]) continue;
        bool minimal = true;
        for (size_t y = 0; y < both.size(); ++y) {
          if (x == y || done[y]) continue;
          if (subset(pts[size_t(both[y])], pts[size_t(both[x])]) &&
              !(pts[size_t(both[y])] == pts[size_t(both[x])])) {
            minimal = false;
            break;
          }
        }
        if (minimal) { pick = int(x); break; }
      }
      if (pick < 0) throw std::logic_error("embed_reals: containment order has a cycle");
      done[size_t(pick)] = true;
      order.push_back(both[size_t(pick)]);
    }
    const int m = int(both.size());
    for (int rank = 1; rank <= m; ++rank)
      g[size_t(f)][order[size_t(rank - 1)]] = Rational(1, 4) + Rational(rank, 12 * (m + 1));
  }

  const Rational quarter(1, 4);
  std::vector<IntervalUnion> out;
  for (int r = 0; r < n; ++r) {
    std::vector<Interval> pieces;
    for (int f = 0; f < forks; ++f) {
      Rational center(f + 1);
      switch (model.regions[size_t(r)].shape(f + 1)) {
        case ForkShape::empty: break;
        case ForkShape::left: pieces.push_back({center - quarter, center}); break;
        case ForkShape::right: pieces.push_back({center, center + quarter}); break;
        case ForkShape::both: {
          Rational gi = g[size_t(f)].at(r);
          pieces.push_back({center - gi, center + gi});
          break;
        }
      }
    }
    out.push_back(IntervalUnion(std::move(pieces)));
  }
  return out;
}

std::optional<Realization> realize(const ConstraintNetwork& n) {
  auto sat = satisfiable_rs(n);
  if (!sat) return std::nullopt;
  ForkModel forks = realize_forks(sat->refinement);
  std::vector<IntervalUnion> intervals = embed_reals(forks);
  RegionStructure check = induced(intervals, sat->refinement.regions);
  if (!(check == sat->refinement))
    throw std::logic_error("realize: geometry oracle check failed");
  return Realization{std::move(sat->refinement), std::move(sat->var_to_region), std::move(forks),
                     std::move(intervals)};
}

}  // namespace rcc
