#include "rcc/structures.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcc {

namespace {

uint8_t eq_code(Kind k) { return k == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq); }

}  // namespace

RegionStructure::RegionStructure(Kind k, std::vector<std::string> ids)
    : kind(k), regions(std::move(ids)), matrix(regions.size() * regions.size(), eq_code(k)) {
  std::set<std::string> seen(regions.begin(), regions.end());
  if (seen.size() != regions.size())
    throw std::invalid_argument("duplicate region ids");
}

int RegionStructure::index_of(const std::string& id) const {
  for (size_t i = 0; i < regions.size(); ++i)
    if (regions[i] == id) return int(i);
  return -1;
}

std::vector<Violation> validate(const RegionStructure& s) {
  std::vector<Violation> out;
  const int n = s.size();
  const uint8_t eq = eq_code(s.kind);
  for (int i = 0; i < n; ++i) {
    if (s.rel(i, i) != eq)
      out.push_back({Violation::Type::diagonal, i, i, -1,
                     "rel(" + s.regions[size_t(i)] + "," + s.regions[size_t(i)] + ") != eq"});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (s.rel(i, j) == eq)
        out.push_back({Violation::Type::identity_off_diagonal, i, j, -1,
                       "eq between distinct regions " + s.regions[size_t(i)] + "," +
                           s.regions[size_t(j)]});
      if (s.rel(j, i) != converse(s.kind, s.rel(i, j)))
        out.push_back({Violation::Type::converse, i, j, -1,
                       "rel(" + s.regions[size_t(j)] + "," + s.regions[size_t(i)] +
                           ") is not the converse of rel(" + s.regions[size_t(i)] + "," +
                           s.regions[size_t(j)] + ")"});
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (!compose(s.kind, s.rel(i, j), s.rel(j, k)).contains(s.rel(i, k)))
          out.push_back({Violation::Type::triangle, i, j, k,
                         "triangle (" + s.regions[size_t(i)] + "," + s.regions[size_t(j)] + "," +
                             s.regions[size_t(k)] + "): " + rel_name(s.kind, s.rel(i, k)) +
                             " not in " + rel_name(s.kind, s.rel(i, j)) + " o " +
                             rel_name(s.kind, s.rel(j, k))});
      }
  return out;
}

bool valid(const RegionStructure& s) { return validate(s).empty(); }

namespace {

template <typename Region, typename RelFn>
RegionStructure induced_impl(Kind kind, const std::vector<Region>& regions,
                             const std::vector<std::string>& ids, const RelFn& rel) {
  if (regions.size() != ids.size()) throw std::invalid_argument("induced: ids/regions size mismatch");
  RegionStructure s(kind, ids);
  const int n = int(regions.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      uint8_t r = rel(regions[size_t(i)], regions[size_t(j)]);
      if (i != j && r == eq_code(kind))
        throw std::invalid_argument("induced: duplicate regions " + ids[size_t(i)] + " and " +
                                    ids[size_t(j)]);
      s.set_rel(i, j, r);
    }
  if (!valid(s)) throw std::logic_error("induced structure failed validation");
  return s;
}

}  // namespace

RegionStructure induced(const std::vector<IntervalUnion>& regions,
                        const std::vector<std::string>& ids) {
  return induced_impl(Kind::rcc8, regions, ids, [](const IntervalUnion& a, const IntervalUnion& b) {
    return uint8_t(rel_intervals(a, b));
  });
}

RegionStructure induced(const std::vector<HyperRect>& regions,
                        const std::vector<std::string>& ids) {
  return induced_impl(Kind::rcc8, regions, ids, [](const HyperRect& a, const HyperRect& b) {
    return uint8_t(rel_rects(a, b));
  });
}

RegionStructure induced(const ForkFrame& frame, const std::vector<ForkRegion>& regions,
                        const std::vector<std::string>& ids) {
  return induced_impl(Kind::rcc8, regions, ids, [&](const ForkRegion& a, const ForkRegion& b) {
    return uint8_t(rel_fork(frame, a, b));
  });
}

RegionStructure induced_rcc5(const std::vector<IntervalUnion>& regions,
                             const std::vector<std::string>& ids) {
  return induced_impl(Kind::rcc5, regions, ids, [](const IntervalUnion& a, const IntervalUnion& b) {
    return uint8_t(rel5_intervals(a, b));
  });
}

RegionStructure substructure(const RegionStructure& s, const std::vector<std::string>& subset) {
  if (subset.empty()) throw std::invalid_argument("substructure of empty id set");
  std::vector<int> idx;
  for (const auto& id : subset) {
    int i = s.index_of(id);
    if (i < 0) throw std::invalid_argument("substructure: unknown region " + id);
    idx.push_back(i);
  }
  RegionStructure out(s.kind, subset);
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = 0; b < idx.size(); ++b) out.set_rel(int(a), int(b), s.rel(idx[a], idx[b]));
  return out;
}

RegionStructure powerset_rcc5(const std::vector<std::set<int>>& atom_sets,
                              const std::vector<std::string>& ids) {
  for (const auto& a : atom_sets)
    if (a.empty()) throw std::invalid_argument("powerset_rcc5: empty atom set");
  for (size_t i = 0; i < atom_sets.size(); ++i)
    for (size_t j = i + 1; j < atom_sets.size(); ++j)
      if (atom_sets[i] == atom_sets[j])
        throw std::invalid_argument("powerset_rcc5: duplicate atom sets");
  RegionStructure s(Kind::rcc5, ids);
  const int n = int(atom_sets.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& a = atom_sets[size_t(i)];
      const auto& b = atom_sets[size_t(j)];
      Rel5 r;
      if (a == b)
        r = Rel5::eq;
      else if (std::includes(b.begin(), b.end(), a.begin(), a.end()))
        r = Rel5::pp;
      else if (std::includes(a.begin(), a.end(), b.begin(), b.end()))
        r = Rel5::ppi;
      else {
        bool disjoint = true;
        for (int x : a)
          if (b.count(x)) { disjoint = false; break; }
        r = disjoint ? Rel5::dr : Rel5::po;
      }
      s.set_rel(i, j, uint8_t(r));
    }
  if (!valid(s)) throw std::logic_error("powerset_rcc5 structure failed validation");
  return s;
}

bool SupReport::all_have_sup() const {
  for (const auto& e : entries)
    if (!e.has_sup) return false;
  return true;
}

namespace {

bool is_sup(const RegionStructure& s, const std::vector<int>& subset, int u) {
  auto r5 = [&](int i, int j) { return Rel5(s.rel(i, j)); };
  for (int x : subset)
    if (!(r5(x, u) == Rel5::eq || r5(x, u) == Rel5::pp)) return false;
  for (int t = 0; t < s.size(); ++t) {
    bool covers_all = true;
    for (int x : subset)
      if (r5(x, t) != Rel5::pp) { covers_all = false; break; }
    if (covers_all && !(r5(u, t) == Rel5::eq || r5(u, t) == Rel5::pp)) return false;
  }
  for (int t = 0; t < s.size(); ++t) {
    bool disjoint_all = true;
    for (int x : subset)
      if (r5(t, x) != Rel5::dr) { disjoint_all = false; break; }
    if (disjoint_all && r5(t, u) != Rel5::dr) return false;
  }
  return true;
}

}  // namespace

SupReport check_sup_property(const RegionStructure& s, int max_subset) {
  if (s.kind != Kind::rcc5) throw KindMismatch("check_sup_property expects an RCC5 structure");
  SupReport rep;
  const int n = s.size();
  auto consider = [&](std::vector<int> subset) {
    SupReport::Entry e;
    e.subset = std::move(subset);
    for (int u = 0; u < n && !e.has_sup; ++u)
      if (is_sup(s, e.subset, u)) { e.has_sup = true; e.sup = u; }
    rep.entries.push_back(std::move(e));
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) consider({i, j});
  if (max_subset >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) consider({i, j, k});
  return rep;
}

namespace {

struct PairEnum {
  std::vector<std::pair<int, int>> pairs;  // (i,j), i<j, lexicographic
  explicit PairEnum(int k) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
  }
};

}  // namespace

long long enumerate_structures(Kind kind, int k,
                               const std::function<bool(const RegionStructure&)>& fn) {
  const int cap = kind == Kind::rcc8 ? 6 : 7;
  if (k < 1 || k > cap)
    throw std::invalid_argument("enumerate_structures: k out of range (1.." + std::to_string(cap) +
                                ")");
  std::vector<std::string> ids;
  for (int i = 0; i < k; ++i) ids.push_back("r" + std::to_string(i + 1));
  RegionStructure s(kind, ids);

  // non-eq relations in canonical order
  std::vector<uint8_t> rels;
  for (int r = 0; r < num_base(kind); ++r)
    if (uint8_t(r) != eq_code(kind)) rels.push_back(uint8_t(r));

  PairEnum pe(k);
  long long count = 0;
  bool stop = false;

  // depth-first over pairs with incremental triangle checks
  auto rec = [&](auto&& self, size_t p) -> void {
    if (stop) return;
    if (p == pe.pairs.size()) {
      ++count;
      if (!fn(s)) stop = true;
      return;
    }
    auto [i, j] = pe.pairs[p];
    for (uint8_t r : rels) {
      s.set_rel(i, j, r);
      s.set_rel(j, i, converse(kind, r));
      // (i,j) is lexicographically last among the pairs of each triangle
      // {m,i,j} with m < i, so exactly those become fully assigned here.
      bool ok = true;
      for (int m = 0; m < i && ok; ++m) {
        ok = compose(kind, s.rel(m, i), s.rel(i, j)).contains(s.rel(m, j)) &&
             compose(kind, s.rel(m, j), s.rel(j, i)).contains(s.rel(m, i)) &&
             compose(kind, s.rel(i, m), s.rel(m, j)).contains(s.rel(i, j)) &&
             compose(kind, s.rel(i, j), s.rel(j, m)).contains(s.rel(i, m)) &&
             compose(kind, s.rel(j, m), s.rel(m, i)).contains(s.rel(j, i)) &&
             compose(kind, s.rel(j, i), s.rel(i, m)).contains(s.rel(j, m));
      }
      if (ok) self(self, p + 1);
      if (stop) return;
    }
  };
  rec(rec, 0);
  return count;
}

std::vector<RegionStructure> enumerate_structures(Kind kind, int k) {
  std::vector<RegionStructure> out;
  enumerate_structures(kind, k, [&](const RegionStructure& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace rcc
