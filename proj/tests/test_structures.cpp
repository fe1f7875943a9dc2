#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rcc/structures.hpp"

using namespace rcc;

namespace {

IntervalUnion iv(long long lo, long long hi) { return IntervalUnion(Rational(lo), Rational(hi)); }

}  // namespace

TEST_CASE("validate accepts a 2-region dc structure") {
  RegionStructure s(Kind::rcc8, {"a", "b"});
  s.set_rel(0, 1, uint8_t(Rel8::dc));
  s.set_rel(1, 0, uint8_t(Rel8::dc));
  CHECK(validate(s).empty());
}

TEST_CASE("validate reports a bad triangle") {
  RegionStructure s(Kind::rcc8, {"x", "y", "z"});
  auto set = [&](int i, int j, Rel8 r) {
    s.set_rel(i, j, uint8_t(r));
    s.set_rel(j, i, uint8_t(converse(r)));
  };
  set(0, 1, Rel8::tpp);
  set(1, 2, Rel8::tpp);
  set(0, 2, Rel8::dc);  // tpp o tpp = {tpp, ntpp}
  auto violations = validate(s);
  REQUIRE(!violations.empty());
  bool found = false;
  for (const auto& v : violations)
    if (v.type == Violation::Type::triangle) found = true;
  CHECK(found);
}

TEST_CASE("validate reports off-diagonal eq") {
  RegionStructure s(Kind::rcc8, {"x", "y"});
  // default-initialized matrix is all eq
  auto violations = validate(s);
  bool found = false;
  for (const auto& v : violations)
    if (v.type == Violation::Type::identity_off_diagonal) found = true;
  CHECK(found);
}

TEST_CASE("induced interval structure") {
  RegionStructure s = induced({iv(0, 1), iv(1, 2), iv(0, 3)}, {"a", "b", "c"});
  CHECK(Rel8(s.rel(0, 1)) == Rel8::ec);
  CHECK(Rel8(s.rel(0, 2)) == Rel8::tpp);
  CHECK(Rel8(s.rel(1, 2)) == Rel8::ntpp);  // [1,2] lies in the open interior of [0,3]
  CHECK(valid(s));
  RegionStructure single = induced({iv(0, 1)}, {"only"});
  CHECK(single.size() == 1);
  CHECK(Rel8(single.rel(0, 0)) == Rel8::eq);
  CHECK_THROWS(induced({iv(0, 1), iv(0, 1)}, {"a", "b"}));
}

TEST_CASE("substructure preserves entries and validity") {
  RegionStructure s = induced({iv(0, 1), iv(1, 2), iv(0, 3)}, {"a", "b", "c"});
  RegionStructure sub = substructure(s, {"a", "c"});
  CHECK(sub.size() == 2);
  CHECK(Rel8(sub.rel(0, 1)) == Rel8::tpp);
  CHECK(valid(sub));
  RegionStructure one = substructure(s, {"b"});
  CHECK(one.size() == 1);
  CHECK_THROWS(substructure(s, {}));
}

TEST_CASE("powerset RCC5 structure over simple sets") {
  RegionStructure s = powerset_rcc5({{1}, {2}, {1, 2}}, {"s1", "s2", "s12"});
  CHECK(Rel5(s.rel(0, 1)) == Rel5::dr);
  CHECK(Rel5(s.rel(0, 2)) == Rel5::pp);
  CHECK(Rel5(s.rel(2, 1)) == Rel5::ppi);
  CHECK(valid(s));
  RegionStructure t = powerset_rcc5({{1, 2}, {2, 3}}, {"a", "b"});
  CHECK(Rel5(t.rel(0, 1)) == Rel5::po);
  CHECK_THROWS(powerset_rcc5({{1}, {1}}, {"a", "b"}));
  CHECK_THROWS(powerset_rcc5({{}}, {"a"}));
}

TEST_CASE("random powerset families validate") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> mask(1, 31);
  for (int it = 0; it < 200; ++it) {
    std::set<std::set<int>> fam;
    for (int i = 0; i < 5; ++i) {
      int m = mask(rng);
      std::set<int> s;
      for (int b = 0; b < 5; ++b)
        if (m >> b & 1) s.insert(b);
      fam.insert(s);
    }
    std::vector<std::set<int>> sets(fam.begin(), fam.end());
    std::vector<std::string> ids;
    for (size_t i = 0; i < sets.size(); ++i) ids.push_back("r" + std::to_string(i));
    CHECK(valid(powerset_rcc5(sets, ids)));
  }
}

TEST_CASE("sup property on the full powerset over three atoms") {
  std::vector<std::set<int>> sets;
  std::vector<std::string> ids;
  for (int m = 1; m < 8; ++m) {
    std::set<int> s;
    for (int b = 0; b < 3; ++b)
      if (m >> b & 1) s.insert(b);
    sets.push_back(s);
    ids.push_back("u" + std::to_string(m));
  }
  RegionStructure s = powerset_rcc5(sets, ids);
  CHECK(check_sup_property(s).all_have_sup());
}

TEST_CASE("two disjoint atoms lack sups") {
  RegionStructure s = powerset_rcc5({{1}, {2}}, {"a", "b"});
  SupReport rep = check_sup_property(s);
  REQUIRE(rep.entries.size() == 1);
  CHECK(!rep.entries[0].has_sup);
  RegionStructure one = powerset_rcc5({{1}}, {"a"});
  CHECK(check_sup_property(one).entries.empty());  // vacuously fine
}

TEST_CASE("enumeration counts for small sizes") {
  CHECK(enumerate_structures(Kind::rcc8, 1).size() == 1);
  CHECK(enumerate_structures(Kind::rcc8, 2).size() == 7);
  CHECK(enumerate_structures(Kind::rcc5, 2).size() == 4);
  CHECK_THROWS(enumerate_structures(Kind::rcc8, 7));
}

TEST_CASE("enumeration matches the naive triple filter at k=3") {
  // naive: choose all 7^3 combinations for the pairs (0,1), (0,2), (1,2)
  std::vector<uint8_t> noneq;
  for (int r = 0; r < kNumRel8; ++r)
    if (Rel8(r) != Rel8::eq) noneq.push_back(uint8_t(r));
  long long naive = 0;
  for (uint8_t a : noneq)
    for (uint8_t b : noneq)
      for (uint8_t c : noneq) {
        RegionStructure s(Kind::rcc8, {"r1", "r2", "r3"});
        auto set = [&](int i, int j, uint8_t r) {
          s.set_rel(i, j, r);
          s.set_rel(j, i, converse(Kind::rcc8, r));
        };
        set(0, 1, a);
        set(0, 2, b);
        set(1, 2, c);
        if (valid(s)) ++naive;
      }
  auto all = enumerate_structures(Kind::rcc8, 3);
  CHECK(naive == (long long)all.size());
  // duplicate-free, every one valid
  for (size_t i = 0; i < all.size(); ++i) CHECK(valid(all[i]));
  for (size_t i = 1; i < all.size(); ++i) CHECK(!(all[i] == all[i - 1]));
  MESSAGE("valid 3-structures: ", all.size());
}

TEST_CASE("every induced structure from random geometry validates") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(0, 9);
  for (int it = 0; it < 100; ++it) {
    std::vector<HyperRect> boxes;
    std::vector<std::string> ids;
    std::set<std::vector<long long>> seen;
    for (int b = 0; b < 3; ++b) {
      int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
      if (x0 == x1) x1 = x0 + 1;
      if (y0 == y1) y1 = y0 + 1;
      if (x0 > x1) std::swap(x0, x1);
      if (y0 > y1) std::swap(y0, y1);
      if (!seen.insert({x0, x1, y0, y1}).second) continue;
      boxes.push_back(HyperRect({{Rational(x0), Rational(x1)}, {Rational(y0), Rational(y1)}}));
      ids.push_back("b" + std::to_string(b));
    }
    CHECK(valid(induced(boxes, ids)));
  }
}
