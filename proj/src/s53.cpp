#include <algorithm>

#include "rcc/reductions.hpp"

namespace rcc {

S5Ptr s5_var(const std::string& name) {
  auto n = std::make_shared<S5Node>();
  n->op = S5Op::var;
  n->name = name;
  return n;
}

S5Ptr s5_not(S5Ptr a) {
  auto n = std::make_shared<S5Node>();
  n->op = S5Op::neg;
  n->a = std::move(a);
  return n;
}

S5Ptr s5_and(S5Ptr a, S5Ptr b) {
  auto n = std::make_shared<S5Node>();
  n->op = S5Op::conj;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

S5Ptr s5_dia(int axis, S5Ptr a) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("s5_dia: axis must be 1..3");
  auto n = std::make_shared<S5Node>();
  n->op = S5Op::dia;
  n->axis = axis;
  n->a = std::move(a);
  return n;
}

// ---------------------------------------------------------------------------
// Surface syntax: variables, !, &, |, ->, <i>, [i], parentheses.

namespace {

struct S5Parser {
  const std::string& text;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && isspace(uint8_t(text[pos]))) ++pos;
  }
  bool eat(const std::string& tok) {
    skip();
    if (text.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  S5Ptr formula() { return implies(); }

  S5Ptr implies() {
    S5Ptr lhs = disj();
    if (eat("->")) {
      S5Ptr rhs = implies();
      return s5_not(s5_and(lhs, s5_not(rhs)));
    }
    return lhs;
  }

  S5Ptr disj() {
    S5Ptr lhs = conj();
    while (true) {
      skip();
      if (pos < text.size() && text[pos] == '|') {
        ++pos;
        lhs = s5_not(s5_and(s5_not(lhs), s5_not(conj())));
      } else {
        return lhs;
      }
    }
  }

  S5Ptr conj() {
    S5Ptr lhs = unary();
    while (eat("&")) lhs = s5_and(lhs, unary());
    return lhs;
  }

  int axis_token(char close) {
    skip();
    if (pos + 1 >= text.size() || text[pos] < '1' || text[pos] > '3' || text[pos + 1] != close)
      throw std::invalid_argument("expected modal axis 1..3 at position " + std::to_string(pos));
    int axis = text[pos] - '0';
    pos += 2;
    return axis;
  }

  S5Ptr unary() {
    skip();
    if (eat("!")) return s5_not(unary());
    if (pos < text.size() && text[pos] == '<') {
      ++pos;
      int axis = axis_token('>');
      return s5_dia(axis, unary());
    }
    if (pos < text.size() && text[pos] == '[') {
      ++pos;
      int axis = axis_token(']');
      return s5_not(s5_dia(axis, s5_not(unary())));
    }
    if (eat("(")) {
      S5Ptr inner = formula();
      if (!eat(")")) throw std::invalid_argument("expected )");
      return inner;
    }
    skip();
    size_t start = pos;
    if (pos >= text.size() || !(text[pos] >= 'a' && text[pos] <= 'z'))
      throw std::invalid_argument("expected a variable at position " + std::to_string(pos));
    ++pos;
    while (pos < text.size() && (isalnum(uint8_t(text[pos])) || text[pos] == '_')) ++pos;
    return s5_var(text.substr(start, pos - start));
  }
};

}  // namespace

S5Ptr s5_parse(const std::string& text) {
  S5Parser p{text};
  S5Ptr f = p.formula();
  p.skip();
  if (p.pos != text.size()) throw std::invalid_argument("trailing input in S5^3 formula");
  return f;
}

std::string s5_print(const S5Ptr& f) {
  switch (f->op) {
    case S5Op::var:
      return f->name;
    case S5Op::neg:
      return "!" + (f->a->op == S5Op::conj ? "(" + s5_print(f->a) + ")" : s5_print(f->a));
    case S5Op::conj: {
      auto side = [&](const S5Ptr& g) {
        return g->op == S5Op::conj ? "(" + s5_print(g) + ")" : s5_print(g);
      };
      return side(f->a) + " & " + side(f->b);
    }
    case S5Op::dia:
      return "<" + std::to_string(f->axis) + ">" +
             (f->a->op == S5Op::conj ? "(" + s5_print(f->a) + ")" : s5_print(f->a));
  }
  throw std::logic_error("s5_print: bad node");
}

// ---------------------------------------------------------------------------
// Semantics

bool s53_check(const S53Model& m, std::array<int, 3> world, const S5Ptr& f) {
  if (world[0] < 0 || world[0] >= m.n1 || world[1] < 0 || world[1] >= m.n2 || world[2] < 0 ||
      world[2] >= m.n3)
    throw std::invalid_argument("s53_check: world out of range");
  switch (f->op) {
    case S5Op::var: {
      auto it = m.valuation.find(f->name);
      return it != m.valuation.end() && it->second.count(world) > 0;
    }
    case S5Op::neg:
      return !s53_check(m, world, f->a);
    case S5Op::conj:
      return s53_check(m, world, f->a) && s53_check(m, world, f->b);
    case S5Op::dia: {
      int size = f->axis == 1 ? m.n1 : f->axis == 2 ? m.n2 : m.n3;
      for (int w = 0; w < size; ++w) {
        std::array<int, 3> moved = world;
        moved[size_t(f->axis - 1)] = w;
        if (s53_check(m, moved, f->a)) return true;
      }
      return false;
    }
  }
  throw std::logic_error("s53_check: bad node");
}

// ---------------------------------------------------------------------------
// The RCC5 reduction

namespace {

constexpr Kind K5 = Kind::rcc5;

FId v5(const std::string& name) { return f_var(K5, name); }
FId dia5(Rel5 r, FId x) { return f_diamond(uint8_t(r), x); }
FId box5(Rel5 r, FId x) { return f_box(uint8_t(r), x); }

const char* dij_name(int i, int j) {
  if (i == 1 && j == 2) return "d12";
  if (i == 1 && j == 3) return "d13";
  return "d23";
}

}  // namespace

FId sharp_translate(const S5Ptr& f) {
  switch (f->op) {
    case S5Op::var:
      return v5(f->name);
    case S5Op::neg:
      return f_and(v5("d"), f_not(sharp_translate(f->a)));
    case S5Op::conj:
      return f_and(sharp_translate(f->a), sharp_translate(f->b));
    case S5Op::dia: {
      // the pair region missing the moved coordinate
      const char* pair = f->axis == 1 ? "d23" : f->axis == 2 ? "d13" : "d12";
      return dia5(Rel5::ppi,
                  f_and(v5(pair), dia5(Rel5::pp, f_and(v5("d"), sharp_translate(f->a)))));
    }
  }
  throw std::logic_error("sharp_translate: bad node");
}

std::vector<FId> chi_rcc5_groups() {
  // (1) regions for elements are pairwise disconnected and sort-unique
  std::vector<FId> g1;
  for (int i = 1; i <= 3; ++i) {
    std::vector<FId> inner;
    for (int j = 1; j <= 3; ++j) {
      FId naj = f_not(v5("a" + std::to_string(j)));
      inner.push_back(f_and(f_and(box5(Rel5::pp, naj), box5(Rel5::ppi, naj)),
                            box5(Rel5::po, naj)));
    }
    g1.push_back(f_implies(v5("a" + std::to_string(i)), f_and_all(K5, inner)));
  }
  FId group1 = f_and_all(K5, g1);
  FId group2 = f_and_all(K5, {f_implies(v5("a1"), f_not(v5("a2"))),
                              f_implies(v5("a1"), f_not(v5("a3"))),
                              f_implies(v5("a2"), f_not(v5("a3")))});
  FId group3 = f_and_all(K5, {f_diamond_m(MacroMod::u, v5("a1")),
                              f_diamond_m(MacroMod::u, v5("a2")),
                              f_diamond_m(MacroMod::u, v5("a3"))});
  auto covers_all = [&](std::vector<int> axes) {
    std::vector<FId> parts;
    for (int i : axes) parts.push_back(dia5(Rel5::ppi, v5("a" + std::to_string(i))));
    return f_and_all(K5, parts);
  };
  FId all3 = covers_all({1, 2, 3});
  FId group4 = f_iff(v5("d"), f_and(all3, f_not(dia5(Rel5::ppi, all3))));
  std::vector<FId> g5;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      FId both = covers_all({i, j});
      g5.push_back(f_iff(v5(dij_name(i, j)), f_and(both, f_not(dia5(Rel5::ppi, both)))));
    }
  FId group5 = f_and_all(K5, g5);
  return {group1, group2, group3, group4, group5};
}

FId chi_rcc5() { return f_and_all(K5, chi_rcc5_groups()); }

FId s53_reduction(const S5Ptr& f) {
  return f_and(f_and(f_box_m(MacroMod::u, chi_rcc5()), v5("d")), sharp_translate(f));
}

// ---------------------------------------------------------------------------
// The powerset model of an S5^3 model

namespace {

int atom_id(const S53Model& m, int axis, int w) {
  // atoms numbered axis-major
  switch (axis) {
    case 1: return w;
    case 2: return m.n1 + w;
    default: return m.n1 + m.n2 + w;
  }
}

std::string pair_region(int i, int j, int wi, int wj) {
  return std::string(dij_name(i, j)) + "_" + std::to_string(wi) + "_" + std::to_string(wj);
}

std::string triple_region(int w1, int w2, int w3) {
  return "d_" + std::to_string(w1) + "_" + std::to_string(w2) + "_" + std::to_string(w3);
}

}  // namespace

std::string s53_triple_region(const S53Model& m, std::array<int, 3> world) {
  (void)m;
  return triple_region(world[0], world[1], world[2]);
}

S53ModelOut model_from_s53(const S53Model& m) {
  if (m.n1 < 1 || m.n2 < 1 || m.n3 < 1)
    throw std::invalid_argument("model_from_s53: sizes must be positive");
  std::vector<std::set<int>> sets;
  std::vector<std::string> ids;
  Valuation val;

  auto sizes = std::array<int, 3>{m.n1, m.n2, m.n3};
  for (int axis = 1; axis <= 3; ++axis)
    for (int w = 0; w < sizes[size_t(axis - 1)]; ++w) {
      ids.push_back("a" + std::to_string(axis) + "_" + std::to_string(w));
      sets.push_back({atom_id(m, axis, w)});
      val["a" + std::to_string(axis)].insert(ids.back());
    }
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      for (int wi = 0; wi < sizes[size_t(i - 1)]; ++wi)
        for (int wj = 0; wj < sizes[size_t(j - 1)]; ++wj) {
          ids.push_back(pair_region(i, j, wi, wj));
          sets.push_back({atom_id(m, i, wi), atom_id(m, j, wj)});
          val[dij_name(i, j)].insert(ids.back());
        }
  for (int w1 = 0; w1 < m.n1; ++w1)
    for (int w2 = 0; w2 < m.n2; ++w2)
      for (int w3 = 0; w3 < m.n3; ++w3) {
        ids.push_back(triple_region(w1, w2, w3));
        sets.push_back({atom_id(m, 1, w1), atom_id(m, 2, w2), atom_id(m, 3, w3)});
        val["d"].insert(ids.back());
      }
  for (const auto& [var, worlds] : m.valuation)
    for (const auto& w : worlds) {
      if (w[0] < 0 || w[0] >= m.n1 || w[1] < 0 || w[1] >= m.n2 || w[2] < 0 || w[2] >= m.n3)
        throw std::invalid_argument("model_from_s53: valuation world out of range");
      val[var].insert(triple_region(w[0], w[1], w[2]));
    }
  return {powerset_rcc5(sets, ids), std::move(val)};
}

}  // namespace rcc
