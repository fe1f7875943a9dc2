#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rcc/algebra.hpp"

using namespace rcc;

TEST_CASE("converse is an involution and fixes symmetric relations") {
  for (int i = 0; i < kNumRel8; ++i) {
    Rel8 r = Rel8(i);
    CHECK(converse(converse(r)) == r);
  }
  for (int i = 0; i < kNumRel5; ++i) {
    Rel5 r = Rel5(i);
    CHECK(converse(converse(r)) == r);
  }
  CHECK(converse(Rel8::tpp) == Rel8::tppi);
  CHECK(converse(Rel8::dc) == Rel8::dc);
  CHECK(converse(Rel8::eq) == Rel8::eq);
  CHECK(converse(Rel5::pp) == Rel5::ppi);
}

TEST_CASE("composition matches the table on the spot-check entries") {
  CHECK(compose(Rel8::tpp, Rel8::tpp) == (RelSet{Kind::rcc8, uint8_t(1u << int(Rel8::tpp) | 1u << int(Rel8::ntpp))}));
  RelSet ecec = compose(Rel8::ec, Rel8::ec);
  CHECK(ecec.contains(Rel8::dc));
  CHECK(ecec.contains(Rel8::ec));
  CHECK(ecec.contains(Rel8::po));
  CHECK(ecec.contains(Rel8::tpp));
  CHECK(ecec.contains(Rel8::tppi));
  CHECK(ecec.contains(Rel8::eq));
  CHECK(ecec.size() == 6);
  CHECK(compose(Rel8::eq, Rel8::po) == RelSet::single(Rel8::po));
  CHECK(compose(Rel8::ntpp, Rel8::ntppi) == RelSet::full(Kind::rcc8));
}

TEST_CASE("RCC5 composition spot checks") {
  CHECK(compose(Rel5::pp, Rel5::pp) == RelSet::single(Rel5::pp));
  RelSet drpo = compose(Rel5::dr, Rel5::po);
  CHECK(drpo.contains(Rel5::dr));
  CHECK(drpo.contains(Rel5::po));
  CHECK(drpo.contains(Rel5::pp));
  CHECK(drpo.size() == 3);
  RelSet ppipp = compose(Rel5::ppi, Rel5::pp);
  CHECK(ppipp.contains(Rel5::eq));
  CHECK(ppipp.contains(Rel5::po));
  CHECK(ppipp.contains(Rel5::pp));
  CHECK(ppipp.contains(Rel5::ppi));
  CHECK(ppipp.size() == 4);
}

TEST_CASE("compose_sets is the pointwise union") {
  CHECK(compose_sets(RelSet::single(Rel8::eq), RelSet::single(Rel8::dc)) ==
        RelSet::single(Rel8::dc));
  CHECK(compose_sets(RelSet::single(Rel8::tpp), RelSet::single(Rel8::tpp)) ==
        compose(Rel8::tpp, Rel8::tpp));
  CHECK(compose_sets(RelSet::full(Kind::rcc8), RelSet::full(Kind::rcc8)) ==
        RelSet::full(Kind::rcc8));
  CHECK_THROWS_AS(compose_sets(RelSet::full(Kind::rcc8), RelSet::full(Kind::rcc5)), KindMismatch);
}

TEST_CASE("coarsening") {
  CHECK(coarsen(Rel8::dc) == Rel5::dr);
  CHECK(coarsen(Rel8::ec) == Rel5::dr);
  CHECK(coarsen(Rel8::ntpp) == Rel5::pp);
  CHECK(coarsen(Rel8::po) == Rel5::po);
  CHECK(coarsen(Rel8::eq) == Rel5::eq);
  for (int i = 0; i < kNumRel8; ++i) {
    Rel8 r = Rel8(i);
    CHECK(coarsen(converse(r)) == converse(coarsen(r)));
  }
}

TEST_CASE("eq shows up in every r o converse(r)") {
  for (int i = 0; i < kNumRel8; ++i) {
    Rel8 r = Rel8(i);
    CHECK(compose(r, converse(r)).contains(Rel8::eq));
  }
  for (int i = 0; i < kNumRel5; ++i) {
    Rel5 r = Rel5(i);
    CHECK(compose(r, converse(r)).contains(Rel5::eq));
  }
}

TEST_CASE("base compositions are never empty") {
  for (int a = 0; a < kNumRel8; ++a)
    for (int b = 0; b < kNumRel8; ++b) CHECK(!compose(Rel8(a), Rel8(b)).is_empty());
  for (int a = 0; a < kNumRel5; ++a)
    for (int b = 0; b < kNumRel5; ++b) CHECK(!compose(Rel5(a), Rel5(b)).is_empty());
}

TEST_CASE("table audit is clean on the embedded data") {
  TableReport rep = table_meta_check();
  for (const auto& v : rep.violations) MESSAGE(v);
  CHECK(rep.ok());
}

TEST_CASE("table audit flags a corrupted fixture") {
  CompositionTables bad = embedded_tables();
  bad.rcc8[0][3] = uint8_t(1u << int(Rel8::po));  // dc o tppi is {dc}, not {po}
  TableReport rep = table_meta_check_on(bad);
  CHECK(!rep.ok());
}

TEST_CASE("relation names round-trip") {
  for (int i = 0; i < kNumRel8; ++i) CHECK(parse_rel8(name(Rel8(i))) == Rel8(i));
  for (int i = 0; i < kNumRel5; ++i) CHECK(parse_rel5(name(Rel5(i))) == Rel5(i));
  CHECK_THROWS_AS(parse_rel8("brd"), std::invalid_argument);
}
