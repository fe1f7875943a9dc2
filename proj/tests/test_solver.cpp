#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rcc/solver.hpp"

using namespace rcc;

namespace {

ConstraintNetwork net(std::vector<std::string> vars) {
  ConstraintNetwork n;
  n.kind = Kind::rcc8;
  n.vars = std::move(vars);
  return n;
}

void cons(ConstraintNetwork& n, const std::string& a, const std::string& b,
          std::vector<Rel8> rels) {
  RelSet s{Kind::rcc8, 0};
  for (Rel8 r : rels) s.add(uint8_t(r));
  n.add_constraint(a, b, s);
}

// Brute-force oracle: a network is satisfiable iff some assignment of its
// variables onto a valid structure over any partition satisfies every
// constraint. Partitions cover merged (eq) solutions.
bool oracle_satisfiable(const ConstraintNetwork& n) {
  const int v = int(n.vars.size());
  std::vector<int> part(size_t(v), 0);
  // enumerate set partitions via restricted growth strings
  std::function<bool(int, int)> rec = [&](int i, int maxc) -> bool {
    if (i == v) {
      int classes = maxc + 1;
      bool found = false;
      enumerate_structures(n.kind, classes, [&](const RegionStructure& s) {
        for (int a = 0; a < v && !found; ++a) {
          // check all constraints under this partition/structure
        }
        bool ok = true;
        for (int a = 0; a < v && ok; ++a)
          for (int b = 0; b < v && ok; ++b) {
            if (a == b) continue;
            uint8_t rel = s.rel(part[size_t(a)], part[size_t(b)]);
            if (part[size_t(a)] == part[size_t(b)]) rel = uint8_t(Rel8::eq);
            if (!n.constraint(a, b).contains(rel)) ok = false;
          }
        if (ok) found = true;
        return !found;  // stop once found
      });
      return found;
    }
    for (int c = 0; c <= maxc + 1; ++c) {
      part[size_t(i)] = c;
      if (rec(i + 1, std::max(maxc, c))) return true;
    }
    return false;
  };
  return rec(1, 0);
}

}  // namespace

TEST_CASE("a_closure infers compositions") {
  ConstraintNetwork n = net({"x", "y", "z"});
  cons(n, "x", "y", {Rel8::ntpp});
  cons(n, "y", "z", {Rel8::ntpp});
  auto r = a_closure(n);
  REQUIRE(std::holds_alternative<ConstraintNetwork>(r));
  const auto& c = std::get<ConstraintNetwork>(r);
  CHECK(c.constraint(0, 2) == RelSet::single(Rel8::ntpp));
}

TEST_CASE("a_closure detects inconsistency") {
  ConstraintNetwork n = net({"x", "y", "z"});
  cons(n, "x", "y", {Rel8::tpp});
  cons(n, "y", "z", {Rel8::tpp});
  cons(n, "x", "z", {Rel8::dc});
  auto r = a_closure(n);
  CHECK(std::holds_alternative<Inconsistent>(r));
}

TEST_CASE("a_closure is idempotent") {
  ConstraintNetwork n = net({"x", "y", "z", "w"});
  cons(n, "x", "y", {Rel8::ec, Rel8::po});
  cons(n, "y", "z", {Rel8::tpp, Rel8::ntpp});
  cons(n, "z", "w", {Rel8::dc, Rel8::ec, Rel8::po});
  auto r1 = a_closure(n);
  REQUIRE(std::holds_alternative<ConstraintNetwork>(r1));
  auto r2 = a_closure(std::get<ConstraintNetwork>(r1));
  REQUIRE(std::holds_alternative<ConstraintNetwork>(r2));
  CHECK(std::get<ConstraintNetwork>(r1) == std::get<ConstraintNetwork>(r2));
}

TEST_CASE("ec3 is satisfiable and refines to an atomic structure") {
  ConstraintNetwork n = ec_k_network(3);
  auto sat = satisfiable_rs(n);
  REQUIRE(sat.has_value());
  CHECK(sat->refinement.size() == 3);
  CHECK(valid(sat->refinement));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(Rel8(sat->refinement.rel(i, j)) == Rel8::ec);
}

TEST_CASE("tpp chain with dc is unsat") {
  ConstraintNetwork n = net({"x", "y", "z"});
  cons(n, "x", "y", {Rel8::tpp});
  cons(n, "y", "z", {Rel8::tpp});
  cons(n, "x", "z", {Rel8::dc});
  CHECK(!satisfiable_rs(n).has_value());
}

TEST_CASE("explicit eq constraints merge variables") {
  ConstraintNetwork n = net({"x", "y", "z"});
  cons(n, "x", "y", {Rel8::eq});
  cons(n, "y", "z", {Rel8::ntpp});
  auto sat = satisfiable_rs(n);
  REQUIRE(sat.has_value());
  CHECK(sat->refinement.size() == 2);
  CHECK(sat->var_to_region[0] == sat->var_to_region[1]);
}

TEST_CASE("propagation-forced eq still finds the merged solution") {
  // x {ec} z, z {ec} y force rel(x,y) into ec o ec; combined with
  // {eq, ntpp} only eq survives, which requires merging
  ConstraintNetwork n = net({"x", "y", "z"});
  cons(n, "x", "z", {Rel8::ec});
  cons(n, "z", "y", {Rel8::ec});
  cons(n, "x", "y", {Rel8::eq, Rel8::ntpp});
  auto sat = satisfiable_rs(n);
  REQUIRE(sat.has_value());
  CHECK(sat->var_to_region[0] == sat->var_to_region[1]);
}

TEST_CASE("all atomic 3-variable networks agree with the brute-force oracle") {
  std::vector<uint8_t> noneq;
  for (int r = 0; r < kNumRel8; ++r)
    if (Rel8(r) != Rel8::eq) noneq.push_back(uint8_t(r));
  int disagreements = 0, sat_count = 0;
  for (uint8_t a : noneq)
    for (uint8_t b : noneq)
      for (uint8_t c : noneq) {
        ConstraintNetwork n = net({"x", "y", "z"});
        n.constraints[{0, 1}] = RelSet::single(Kind::rcc8, a);
        n.constraints[{0, 2}] = RelSet::single(Kind::rcc8, b);
        n.constraints[{1, 2}] = RelSet::single(Kind::rcc8, c);
        bool got = satisfiable_rs(n).has_value();
        bool want = oracle_satisfiable(n);
        if (got != want) ++disagreements;
        if (got) ++sat_count;
      }
  CHECK(disagreements == 0);
  MESSAGE("satisfiable atomic triples: ", sat_count);
}

TEST_CASE("random 4-variable networks agree with the brute-force oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> bits(1, 255);
  std::uniform_int_distribution<int> npairs(1, 6);
  for (int it = 0; it < 120; ++it) {
    ConstraintNetwork n = net({"a", "b", "c", "d"});
    int m = npairs(rng);
    for (int c = 0; c < m; ++c) {
      int i = int(rng() % 4), j = int(rng() % 4);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      RelSet s{Kind::rcc8, uint8_t(bits(rng))};
      auto it2 = n.constraints.find({i, j});
      RelSet merged = it2 == n.constraints.end() ? s : intersect(it2->second, s);
      if (merged.is_empty()) continue;
      n.constraints[{i, j}] = merged;
    }
    CHECK(satisfiable_rs(n).has_value() == oracle_satisfiable(n));
  }
}

TEST_CASE("fork realization of a single ec pair uses one fork") {
  ConstraintNetwork n = net({"x", "y"});
  cons(n, "x", "y", {Rel8::ec});
  auto sat = satisfiable_rs(n);
  REQUIRE(sat.has_value());
  ForkModel fm = realize_forks(sat->refinement);
  CHECK(fm.frame.fork_count == 1);
  CHECK(fm.regions[0].shape(1) == ForkShape::left);
  CHECK(fm.regions[1].shape(1) == ForkShape::right);
}

TEST_CASE("embedding the ec pair gives the canonical quarter intervals") {
  ConstraintNetwork n = net({"x", "y"});
  cons(n, "x", "y", {Rel8::ec});
  auto r = realize(n);
  REQUIRE(r.has_value());
  const IntervalUnion& x = r->intervals_for_var(0);
  const IntervalUnion& y = r->intervals_for_var(1);
  CHECK(x == IntervalUnion(Rational(3, 4), Rational(1)));
  CHECK(y == IntervalUnion(Rational(1), Rational(5, 4)));
}

TEST_CASE("realize verifies the induced matrix on every sat atomic 3-network") {
  std::vector<uint8_t> noneq;
  for (int r = 0; r < kNumRel8; ++r)
    if (Rel8(r) != Rel8::eq) noneq.push_back(uint8_t(r));
  int realized = 0;
  for (uint8_t a : noneq)
    for (uint8_t b : noneq)
      for (uint8_t c : noneq) {
        ConstraintNetwork n = net({"x", "y", "z"});
        n.constraints[{0, 1}] = RelSet::single(Kind::rcc8, a);
        n.constraints[{0, 2}] = RelSet::single(Kind::rcc8, b);
        n.constraints[{1, 2}] = RelSet::single(Kind::rcc8, c);
        auto r = realize(n);  // throws if the oracle check fails
        if (r) ++realized;
      }
  MESSAGE("realized atomic triples: ", realized);
  CHECK(realized > 0);
}

TEST_CASE("ntpp constraints realize with nested intervals") {
  ConstraintNetwork n = net({"x", "y", "z"});
  cons(n, "x", "y", {Rel8::ntpp});
  cons(n, "x", "z", {Rel8::ntpp});
  auto r = realize(n);
  REQUIRE(r.has_value());
  CHECK(rel_intervals(r->intervals_for_var(0), r->intervals_for_var(1)) == Rel8::ntpp);
  CHECK(rel_intervals(r->intervals_for_var(0), r->intervals_for_var(2)) == Rel8::ntpp);
}

TEST_CASE("deterministic refinement and realization") {
  ConstraintNetwork n = net({"a", "b", "c"});
  cons(n, "a", "b", {Rel8::po, Rel8::tpp});
  cons(n, "b", "c", {Rel8::ec, Rel8::ntpp});
  auto r1 = realize(n);
  auto r2 = realize(n);
  REQUIRE(r1.has_value());
  REQUIRE(r2.has_value());
  CHECK(r1->refinement == r2->refinement);
  CHECK(r1->intervals == r2->intervals);
}

TEST_CASE("self constraints") {
  ConstraintNetwork n = net({"x"});
  RelSet eqset = RelSet::single(Rel8::eq);
  n.add_constraint("x", "x", eqset);  // fine, trivially true
  CHECK(n.constraints.empty());
  CHECK_THROWS(n.add_constraint("x", "x", RelSet::single(Rel8::dc)));
}
