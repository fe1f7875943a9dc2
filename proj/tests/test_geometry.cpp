#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rcc/geometry.hpp"

using namespace rcc;

namespace {

IntervalUnion iv(long long lo, long long hi) { return IntervalUnion(Rational(lo), Rational(hi)); }

HyperRect box2(long long x0, long long x1, long long y0, long long y1) {
  return HyperRect({{Rational(x0), Rational(x1)}, {Rational(y0), Rational(y1)}});
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a(1, 4), b(1, 12);
  CHECK((a + b) == Rational(1, 3));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 48));
  CHECK((a / b) == Rational(3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(1, -2) < Rational(0));
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-1/4") == Rational(-1, 4));
  CHECK(Rational::parse("2") == Rational(2));
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(2).str() == "2");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("interval union normalization merges touching pieces") {
  IntervalUnion u({{Rational(0), Rational(1)}, {Rational(1), Rational(2)}});
  CHECK(u.pieces().size() == 1);
  CHECK(u.pieces()[0].lo == Rational(0));
  CHECK(u.pieces()[0].hi == Rational(2));
  IntervalUnion v({{Rational(3), Rational(4)}, {Rational(0), Rational(1)}});
  CHECK(v.pieces().size() == 2);
  CHECK(v.pieces()[0].lo == Rational(0));
  CHECK_THROWS(IntervalUnion({{Rational(1), Rational(1)}}));
  CHECK_THROWS(IntervalUnion(std::vector<Interval>{}));
}

TEST_CASE("interval relations per the case analysis") {
  CHECK(rel_intervals(iv(0, 1), iv(1, 2)) == Rel8::ec);
  CHECK(rel_intervals(iv(0, 2), iv(1, 3)) == Rel8::po);
  CHECK(rel_intervals(iv(1, 2), iv(0, 3)) == Rel8::ntpp);
  CHECK(rel_intervals(iv(0, 1), iv(0, 2)) == Rel8::tpp);
  CHECK(rel_intervals(iv(0, 1), iv(2, 3)) == Rel8::dc);
  CHECK(rel_intervals(iv(0, 1), iv(0, 1)) == Rel8::eq);
  CHECK(rel_intervals(iv(0, 2), iv(0, 1)) == Rel8::tppi);
  CHECK(rel_intervals(iv(0, 3), iv(1, 2)) == Rel8::ntppi);
}

TEST_CASE("multi-piece interval relations") {
  IntervalUnion u({{Rational(0), Rational(1)}, {Rational(2), Rational(3)}});
  IntervalUnion v({{Rational(0), Rational(3)}});
  CHECK(rel_intervals(u, v) == Rel8::tpp);
  IntervalUnion w({{Rational(1), Rational(2)}});
  CHECK(rel_intervals(u, w) == Rel8::ec);  // touches at 1 and 2
  IntervalUnion inner({{Rational(1, 4), Rational(1, 2)}, {Rational(9, 4), Rational(5, 2)}});
  CHECK(rel_intervals(inner, u) == Rel8::ntpp);
}

TEST_CASE("rel5 coarsens the interval relation") {
  CHECK(rel5_intervals(iv(0, 1), iv(1, 2)) == Rel5::dr);
  CHECK(rel5_intervals(iv(0, 1), iv(0, 2)) == Rel5::pp);
  CHECK(rel5_intervals(iv(0, 1), iv(0, 1)) == Rel5::eq);
}

TEST_CASE("box relations") {
  CHECK(rel_rects(box2(0, 1, 0, 1), box2(2, 3, 0, 1)) == Rel8::dc);
  CHECK(rel_rects(box2(0, 2, 0, 2), box2(1, 3, 1, 3)) == Rel8::po);
  CHECK(rel_rects(box2(0, 4, 0, 4), box2(1, 2, 1, 2)) == Rel8::ntppi);
  CHECK(rel_rects(box2(0, 1, 0, 1), box2(1, 2, 0, 1)) == Rel8::ec);
  CHECK(rel_rects(box2(0, 1, 0, 1), box2(0, 2, 0, 2)) == Rel8::tpp);
  CHECK_THROWS(rel_rects(box2(0, 1, 0, 1), HyperRect({{Rational(0), Rational(1)}})));
}

TEST_CASE("alexandrov interior and closure on one fork") {
  ForkFrame f(1);
  ForkPointSet bl(1);
  bl.masks[0] = ForkPointSet::kB | ForkPointSet::kL;
  ForkPointSet interior = alexandrov_interior(f, bl);
  CHECK(interior.masks[0] == ForkPointSet::kL);
  ForkPointSet l(1);
  l.masks[0] = ForkPointSet::kL;
  CHECK(alexandrov_closure(f, l).masks[0] == (ForkPointSet::kB | ForkPointSet::kL));
  ForkPointSet whole(1);
  whole.masks[0] = ForkPointSet::kB | ForkPointSet::kL | ForkPointSet::kR;
  CHECK(alexandrov_interior(f, whole) == whole);
  CHECK(is_regular_closed(f, bl));
  CHECK(is_regular_closed(f, whole));
  ForkPointSet b_only(1);
  b_only.masks[0] = ForkPointSet::kB;
  CHECK(!is_regular_closed(f, b_only));
}

TEST_CASE("fork region relations") {
  ForkFrame f1(1);
  ForkRegion left(f1, {{1, ForkShape::left}});
  ForkRegion right(f1, {{1, ForkShape::right}});
  ForkRegion both(f1, {{1, ForkShape::both}});
  CHECK(rel_fork(f1, left, right) == Rel8::ec);
  CHECK(rel_fork(f1, left, both) == Rel8::ntpp);
  CHECK(rel_fork(f1, both, left) == Rel8::ntppi);
  CHECK(rel_fork(f1, left, left) == Rel8::eq);

  ForkFrame f2(2);
  ForkRegion s(f2, {{1, ForkShape::left}});
  ForkRegion t(f2, {{1, ForkShape::left}, {2, ForkShape::both}});
  CHECK(rel_fork(f2, s, t) == Rel8::tpp);
  ForkRegion u(f2, {{1, ForkShape::both}});
  ForkRegion v(f2, {{2, ForkShape::both}});
  CHECK(rel_fork(f2, u, v) == Rel8::dc);
  CHECK_THROWS(ForkRegion(f2, {{1, ForkShape::empty}}));
  CHECK_THROWS(rel_fork(f1, s, t));
}

// --- randomized properties ---------------------------------------------

namespace {

IntervalUnion random_union(std::mt19937_64& rng, int max_pieces = 4) {
  std::uniform_int_distribution<int> npieces(1, max_pieces);
  std::uniform_int_distribution<int> coord(0, 23);
  int n = npieces(rng);
  std::vector<Interval> pieces;
  for (int i = 0; i < n; ++i) {
    int a = coord(rng);
    int b = coord(rng);
    if (a == b) b = a + 1;
    if (a > b) std::swap(a, b);
    pieces.push_back({Rational(a, 2), Rational(b, 2)});
  }
  return IntervalUnion(pieces);
}

HyperRect random_box(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coord(0, 11);
  std::vector<Interval> dims;
  for (int d = 0; d < 2; ++d) {
    int a = coord(rng), b = coord(rng);
    if (a == b) b = a + 1;
    if (a > b) std::swap(a, b);
    dims.push_back({Rational(a), Rational(b)});
  }
  return HyperRect(dims);
}

ForkRegion random_fork_region(std::mt19937_64& rng, const ForkFrame& f) {
  std::uniform_int_distribution<int> shape(0, 3);
  std::map<int, ForkShape> shapes;
  for (int i = 1; i <= f.fork_count; ++i) {
    ForkShape s = ForkShape(shape(rng));
    if (s != ForkShape::empty) shapes[i] = s;
  }
  if (shapes.empty()) shapes[1] = ForkShape::both;
  return ForkRegion(f, shapes);
}

}  // namespace

TEST_CASE("converse coherence on random pairs") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 2000; ++it) {
    IntervalUnion s = random_union(rng), t = random_union(rng);
    CHECK(rel_intervals(s, t) == converse(rel_intervals(t, s)));
  }
  for (int it = 0; it < 2000; ++it) {
    HyperRect s = random_box(rng), t = random_box(rng);
    CHECK(rel_rects(s, t) == converse(rel_rects(t, s)));
  }
  ForkFrame f(3);
  for (int it = 0; it < 2000; ++it) {
    ForkRegion s = random_fork_region(rng, f), t = random_fork_region(rng, f);
    CHECK(rel_fork(f, s, t) == converse(rel_fork(f, t, s)));
  }
}

TEST_CASE("composition-table soundness on random triples") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 3000; ++it) {
    IntervalUnion s = random_union(rng), t = random_union(rng), u = random_union(rng);
    CHECK(compose(rel_intervals(s, t), rel_intervals(t, u)).contains(rel_intervals(s, u)));
  }
}

TEST_CASE("relation is invariant under re-normalizing a refined piece list") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 500; ++it) {
    IntervalUnion s = random_union(rng), t = random_union(rng);
    // split every piece of s at its midpoint and rebuild
    std::vector<Interval> split;
    for (const auto& p : s.pieces()) {
      Rational mid = (p.lo + p.hi) / Rational(2);
      split.push_back({p.lo, mid});
      split.push_back({mid, p.hi});
    }
    IntervalUnion s2(split);
    CHECK(s2 == s);
    CHECK(rel_intervals(s2, t) == rel_intervals(s, t));
  }
}
