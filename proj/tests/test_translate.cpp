#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rcc/translate.hpp"

using namespace rcc;

namespace {

FId random_modal(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 5);
  switch (pick(rng)) {
    case 0:
      return f_var(Kind::rcc8, vars[rng() % vars.size()]);
    case 1:
      return f_true(Kind::rcc8);
    case 2:
      return f_not(random_modal(rng, vars, depth - 1));
    case 3:
      return f_and(random_modal(rng, vars, depth - 1), random_modal(rng, vars, depth - 1));
    case 4:
      return f_box(uint8_t(rng() % 8), random_modal(rng, vars, depth - 1));
    default:
      return f_diamond(uint8_t(rng() % 8), random_modal(rng, vars, depth - 1));
  }
}

Fo2Ptr random_fo2(std::mt19937_64& rng, int qdepth, std::set<char> free_allowed) {
  char v = free_allowed.count('x') && (!free_allowed.count('y') || rng() % 2) ? 'x' : 'y';
  char w = v == 'x' ? 'y' : 'x';
  std::uniform_int_distribution<int> pick(0, qdepth == 0 ? 3 : 6);
  switch (pick(rng)) {
    case 0:
      return fo_pred(rng() % 2 ? "p" : "q", v);
    case 1:
      if (free_allowed.size() == 2) return fo_rel(Kind::rcc8, uint8_t(rng() % 8), v, w);
      return fo_rel(Kind::rcc8, uint8_t(rng() % 8), v, v);
    case 2:
      if (free_allowed.size() == 2) return fo_eq(v, w);
      return fo_eq(v, v);
    case 3:
      return fo_not(random_fo2(rng, qdepth, free_allowed));
    case 4:
      return fo_and(random_fo2(rng, qdepth, free_allowed),
                    random_fo2(rng, qdepth, free_allowed));
    default: {
      // quantify one variable; the body may use both
      char q = rng() % 2 ? 'x' : 'y';
      std::set<char> body_free = free_allowed;
      body_free.insert(q);
      return fo_exists(q, random_fo2(rng, qdepth - 1, body_free));
    }
  }
}

Valuation random_valuation(std::mt19937_64& rng, const RegionStructure& s,
                           const std::vector<std::string>& vars) {
  Valuation v;
  for (const auto& var : vars) {
    std::set<std::string> ids;
    for (const auto& r : s.regions)
      if (rng() % 2) ids.insert(r);
    v[var] = ids;
  }
  return v;
}

}  // namespace

TEST_CASE("standard translation of simple formulas") {
  FId dia = parse_formula("<dc>p", Kind::rcc8);
  CHECK(fo2_print(modal_to_fo(dia)) == "(exists y (and (dc x y) (p y)))");
  FId box = parse_formula("[ec]p", Kind::rcc8);
  CHECK(fo2_print(modal_to_fo(box)) == "(not (exists y (and (ec x y) (not (p y)))))");
  FId p = parse_formula("p", Kind::rcc8);
  CHECK(fo2_print(modal_to_fo(p)) == "(p x)");
}

TEST_CASE("standard translation size is linear") {
  std::mt19937_64 rng(43);
  std::vector<std::string> vars{"p", "q"};
  for (int it = 0; it < 50; ++it) {
    FId f = random_modal(rng, vars, 4);
    FId core = expand(f);
    std::function<int(const Fo2Ptr&)> size = [&](const Fo2Ptr& g) {
      int s = 1;
      if (g->a) s += size(g->a);
      if (g->b) s += size(g->b);
      return s;
    };
    CHECK(size(modal_to_fo(f)) <= 5 * formula_size(core) + 5);
  }
}

TEST_CASE("modal check agrees with eval_fo under the standard translation") {
  std::mt19937_64 rng(47);
  std::vector<std::string> vars{"p", "q"};
  auto structures = enumerate_structures(Kind::rcc8, 3);
  int runs = 0;
  for (int it = 0; it < 500; ++it) {
    FId f = random_modal(rng, vars, 3);
    Fo2Ptr fo = modal_to_fo(f);
    const auto& s = structures[rng() % structures.size()];
    Valuation v = random_valuation(rng, s, vars);
    for (const auto& region : s.regions) {
      Fo2Assignment asg;
      asg.x = region;
      CHECK(check(s, v, region, f) == eval_fo(s, v, asg, fo));
      ++runs;
    }
  }
  CHECK(runs >= 500);
}

TEST_CASE("fo2 s-expression round-trip") {
  const char* texts[] = {
      "(exists y (and (ec x y) (p y)))",
      "(not (and (p x) (not (q x))))",
      "(and (= x x) (eq x x))",
  };
  for (const char* t : texts) {
    Fo2Ptr f = fo2_parse(t, Kind::rcc8);
    CHECK(fo2_print(fo2_parse(fo2_print(f), Kind::rcc8)) == fo2_print(f));
  }
  // sugar desugars
  Fo2Ptr g = fo2_parse("(forall x (implies (p x) (q x)))", Kind::rcc8);
  CHECK(fo2_print(g) == "(not (exists x (not (not (and (p x) (not (q x)))))))");
  CHECK_THROWS(fo2_parse("(p z)", Kind::rcc8));
  CHECK_THROWS(fo2_parse("(frob x y z)", Kind::rcc8));
}

TEST_CASE("sigma translation: base cases") {
  CHECK(fo2_to_modal(fo2_parse("(eq x x)", Kind::rcc8), Kind::rcc8) == f_true(Kind::rcc8));
  CHECK(fo2_to_modal(fo2_parse("(tpp x x)", Kind::rcc8), Kind::rcc8) == f_false(Kind::rcc8));
  CHECK(fo2_to_modal(fo2_parse("(p x)", Kind::rcc8), Kind::rcc8) == f_var(Kind::rcc8, "p"));
  CHECK_THROWS(fo2_to_modal(fo2_parse("(p y)", Kind::rcc8), Kind::rcc8));
}

TEST_CASE("sigma translation preserves truth pointwise: handpicked") {
  Fo2Ptr f = fo2_parse("(exists y (and (ec x y) (p y)))", Kind::rcc8);
  FId tr = fo2_to_modal(f, Kind::rcc8);
  FId direct = parse_formula("<ec>p", Kind::rcc8);
  for (int k = 1; k <= 3; ++k) {
    enumerate_structures(Kind::rcc8, k, [&](const RegionStructure& s) {
      for (long long m = 0; m < (1ll << k); ++m) {
        Valuation v;
        std::set<std::string> ids;
        for (int r = 0; r < k; ++r)
          if (m >> r & 1) ids.insert(s.regions[size_t(r)]);
        v["p"] = ids;
        for (const auto& region : s.regions)
          CHECK(check(s, v, region, tr) == check(s, v, region, direct));
      }
      return true;
    });
  }
}

TEST_CASE("sigma translation preserves truth pointwise: random formulas") {
  std::mt19937_64 rng(53);
  auto structures2 = enumerate_structures(Kind::rcc8, 2);
  auto structures3 = enumerate_structures(Kind::rcc8, 3);
  std::vector<std::string> vars{"p", "q"};
  for (int it = 0; it < 150; ++it) {
    Fo2Ptr f = random_fo2(rng, 2, {'x'});
    FId tr = fo2_to_modal(f, Kind::rcc8);
    auto on = [&](const RegionStructure& s) {
      Valuation v = random_valuation(rng, s, vars);
      for (const auto& region : s.regions) {
        Fo2Assignment asg;
        asg.x = region;
        CHECK(eval_fo(s, v, asg, f) == check(s, v, region, tr));
      }
    };
    on(structures2[rng() % structures2.size()]);
    on(structures3[rng() % structures3.size()]);
  }
}

TEST_CASE("sigma translation output stays within the exponential bound") {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 60; ++it) {
    Fo2Ptr f = random_fo2(rng, 2, {'x'});
    std::function<int(const Fo2Ptr&)> fsize = [&](const Fo2Ptr& g) {
      int s = 1;
      if (g->a) s += fsize(g->a);
      if (g->b) s += fsize(g->b);
      return s;
    };
    double in_size = fsize(f);
    double out_size = formula_size(fo2_to_modal(f, Kind::rcc8));
    CHECK(out_size <= std::pow(2.0, 1.5 * in_size) * 64.0);
  }
  // the exists-case family grows faster than linearly
  auto family = [&](int l) {
    Fo2Ptr inner = fo_rel(Kind::rcc8, uint8_t(Rel8::dc), 'x', 'y');
    for (int i = 0; i < l; ++i) {
      Fo2Ptr gam = fo_pred("g" + std::to_string(i), 'x');
      inner = fo_and(inner, fo_not(fo_and(gam, fo_not(fo_pred("h" + std::to_string(i), 'y')))));
    }
    return fo_exists('y', inner);
  };
  std::function<int(const Fo2Ptr&)> fsize = [&](const Fo2Ptr& g) {
    int s = 1;
    if (g->a) s += fsize(g->a);
    if (g->b) s += fsize(g->b);
    return s;
  };
  double r3 = double(formula_size(fo2_to_modal(family(3), Kind::rcc8))) / fsize(family(3));
  double r6 = double(formula_size(fo2_to_modal(family(6), Kind::rcc8))) / fsize(family(6));
  CHECK(r6 > 2.0 * r3);  // super-linear growth in the case-split size
}

TEST_CASE("succinctness formula family") {
  Fo2Ptr f1 = succinctness_formula(1);
  auto preds = [&](const Fo2Ptr& f) {
    std::set<std::string> out;
    std::function<void(const Fo2Ptr&)> walk = [&](const Fo2Ptr& g) {
      if (g->op == Fo2Op::atom1) out.insert(g->pred);
      if (g->a) walk(g->a);
      if (g->b) walk(g->b);
    };
    walk(f);
    return out;
  };
  CHECK(preds(f1) == std::set<std::string>{"p0", "p1"});
  CHECK(fo2_free_vars(f1).empty());

  // true when p_n is a union of profile classes; false on a 2-region
  // model with equal p0 and differing p1
  RegionStructure s(Kind::rcc8, {"a", "b"});
  s.set_rel(0, 1, uint8_t(Rel8::dc));
  s.set_rel(1, 0, uint8_t(Rel8::dc));
  Valuation v{{"p0", {"a", "b"}}, {"p1", {"a"}}};
  Fo2Assignment none;
  CHECK(!eval_fo(s, v, none, f1));
  Valuation w{{"p0", {"a", "b"}}, {"p1", {"a", "b"}}};
  CHECK(eval_fo(s, w, none, f1));
}

TEST_CASE("translated succinctness formulas agree with direct FO evaluation") {
  std::mt19937_64 rng(61);
  for (int n = 1; n <= 3; ++n) {
    Fo2Ptr f = succinctness_formula(n);
    FId tr = fo2_to_modal(f, Kind::rcc8);
    std::vector<std::string> vars;
    for (int i = 0; i <= n; ++i) vars.push_back("p" + std::to_string(i));
    auto structures = enumerate_structures(Kind::rcc8, 3);
    for (int it = 0; it < 40; ++it) {
      const auto& s = structures[rng() % structures.size()];
      Valuation v = random_valuation(rng, s, vars);
      Fo2Assignment none;
      bool direct = eval_fo(s, v, none, f);
      for (const auto& region : s.regions) CHECK(check(s, v, region, tr) == direct);
    }
  }
}

// --- FL4 ---------------------------------------------------------------

TEST_CASE("phi_r formulas agree with the geometry oracle on the full grid (n=1)") {
  std::vector<std::string> xs{"x1", "x2"}, ys{"y1", "y2"};
  std::vector<IntervalUnion> grid;
  for (int a = 0; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) grid.push_back(IntervalUnion(Rational(a), Rational(b)));
  for (const auto& s : grid)
    for (const auto& t : grid) {
      Rel8 want = rel_intervals(s, t);
      Fl4Model m = s == t ? fl4_model_from_intervals({"s"}, {s}, {{"is_s", {"s"}}, {"is_t", {"s"}}})
                          : fl4_model_from_intervals({"s", "t"}, {s, t},
                                                     {{"is_s", {"s"}}, {"is_t", {"t"}}});
      for (int r = 0; r < kNumRel8; ++r) {
        Fl4Ptr phi = fl4_rel_formula(Rel8(r), 1, xs, ys);
        Fl4Ptr bound = fl4_exists(
            xs, fl4_and(fl4_exists(ys, fl4_and(phi, fl4_pred("is_t", ys))), fl4_pred("is_s", xs)));
        bool got = eval_fl4(m, bound);
        CHECK(got == (Rel8(r) == want));
      }
    }
}

TEST_CASE("phi_r formulas agree with the geometry oracle on a box grid (n=2)") {
  std::vector<std::string> xs{"x1", "x2", "x3", "x4"}, ys{"y1", "y2", "y3", "y4"};
  std::vector<HyperRect> grid;
  for (int a = 0; a <= 3; ++a)
    for (int b = a + 1; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = c + 1; d <= 3; ++d)
          grid.push_back(HyperRect({{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}));
  int checked = 0;
  for (const auto& s : grid)
    for (const auto& t : grid) {
      Rel8 want = rel_rects(s, t);
      Fl4Model m = s == t ? fl4_model_from_boxes({"s"}, {s}, {{"is_s", {"s"}}, {"is_t", {"s"}}})
                          : fl4_model_from_boxes({"s", "t"}, {s, t},
                                                 {{"is_s", {"s"}}, {"is_t", {"t"}}});
      Fl4Ptr phi = fl4_rel_formula(want, 2, xs, ys);
      Fl4Ptr bound = fl4_exists(
          xs, fl4_and(fl4_exists(ys, fl4_and(phi, fl4_pred("is_t", ys))), fl4_pred("is_s", xs)));
      CHECK(eval_fl4(m, bound));
      // and a wrong relation must fail
      Rel8 wrong = Rel8((int(want) + 1) % kNumRel8);
      Fl4Ptr phiw = fl4_rel_formula(wrong, 2, xs, ys);
      Fl4Ptr boundw = fl4_exists(
          xs, fl4_and(fl4_exists(ys, fl4_and(phiw, fl4_pred("is_t", ys))), fl4_pred("is_s", xs)));
      CHECK(!eval_fl4(m, boundw));
      ++checked;
    }
  MESSAGE("box pairs checked: ", checked);
}

TEST_CASE("translated modal formulas evaluate like the model checker") {
  // <ec>p on two touching intervals with p on the second
  std::vector<IntervalUnion> regions{IntervalUnion(Rational(0), Rational(1)),
                                     IntervalUnion(Rational(1), Rational(2))};
  RegionStructure s = induced(regions, {"a", "b"});
  Valuation v{{"p", {"b"}}};
  FId f = parse_formula("<ec>p", Kind::rcc8);
  Fl4Model m = fl4_model_from_intervals({"a", "b"}, regions, v);
  // the sentence translation is a validity statement over all regions
  FId implied = f_implies(f_var(Kind::rcc8, "marker"), f);
  Valuation v2 = v;
  v2["marker"] = {"a"};
  Fl4Model m2 = fl4_model_from_intervals({"a", "b"}, regions, v2);
  CHECK(eval_fl4(m2, modal_to_fl4(implied, 1)) == valid_in(s, v2, implied));
  // <dc>true on a single region is false, so the negation is valid
  std::vector<IntervalUnion> one{IntervalUnion(Rational(0), Rational(1))};
  Fl4Model m3 = fl4_model_from_intervals({"r"}, one, {});
  CHECK(eval_fl4(m3, modal_to_fl4(parse_formula("!<dc>true", Kind::rcc8), 1)));
  CHECK(!eval_fl4(m3, modal_to_fl4(parse_formula("<dc>true", Kind::rcc8), 1)));
}

TEST_CASE("random modal sentences match eval_fl4 on random box models") {
  std::mt19937_64 rng(67);
  std::vector<std::string> vars{"p", "q"};
  std::uniform_int_distribution<int> coord(0, 5);
  for (int it = 0; it < 60; ++it) {
    // random model of 2 or 3 distinct boxes
    std::vector<HyperRect> boxes;
    std::vector<std::string> names;
    int want = 2 + int(rng() % 2);
    while (int(boxes.size()) < want) {
      int a = coord(rng), b = coord(rng), c = coord(rng), d = coord(rng);
      if (a == b) b = a + 1;
      if (c == d) d = c + 1;
      if (a > b) std::swap(a, b);
      if (c > d) std::swap(c, d);
      HyperRect h({{Rational(a), Rational(b)}, {Rational(c), Rational(d)}});
      bool dup = false;
      for (const auto& e : boxes)
        if (e == h) dup = true;
      if (dup) continue;
      boxes.push_back(h);
      names.push_back("r" + std::to_string(boxes.size()));
    }
    RegionStructure s = induced(boxes, names);
    Valuation v = random_valuation(rng, s, vars);
    FId f = random_modal(rng, vars, 2);
    Fl4Model m = fl4_model_from_boxes(names, boxes, v);
    CHECK(eval_fl4(m, modal_to_fl4(f, 2)) == valid_in(s, v, f));
  }
}
