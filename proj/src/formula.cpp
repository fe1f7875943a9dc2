#include "rcc/logic.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace rcc {

namespace {

struct Arena {
  std::vector<FormulaNode> nodes;
  std::map<std::tuple<FOp, Kind, MacroMod, uint8_t, FId, FId, std::string>, FId> intern;
  std::mutex mu;

  FId get(FormulaNode n) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n.op, n.kind, n.macro, n.base_rel, n.a, n.b, n.name);
    auto it = intern.find(key);
    if (it != intern.end()) return it->second;
    nodes.push_back(std::move(n));
    FId id = FId(nodes.size()) - 1;
    intern.emplace(std::move(key), id);
    return id;
  }
};

Arena& arena() {
  static Arena a;
  return a;
}

Kind child_kind(FId a) { return fnode(a).kind; }

void require_same_kind(FId a, FId b) {
  if (child_kind(a) != child_kind(b))
    throw KindMismatch("formula alphabet mismatch");
}

bool macro_rcc8_only(MacroMod m) {
  switch (m) {
    case MacroMod::pp:
    case MacroMod::ppi:
    case MacroMod::next:
    case MacroMod::prev:
    case MacroMod::right:
    case MacroMod::up:
    case MacroMod::left:
    case MacroMod::down:
      return true;
    default:
      return false;
  }
}

}  // namespace

const FormulaNode& fnode(FId id) { return arena().nodes[size_t(id)]; }

FId f_true(Kind k) { return arena().get({FOp::tru, k, MacroMod::none, 0, -1, -1, ""}); }
FId f_false(Kind k) { return f_not(f_true(k)); }

FId f_var(Kind k, const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return arena().get({FOp::var, k, MacroMod::none, 0, -1, -1, name});
}

FId f_not(FId a) { return arena().get({FOp::neg, child_kind(a), MacroMod::none, 0, a, -1, ""}); }

FId f_and(FId a, FId b) {
  require_same_kind(a, b);
  return arena().get({FOp::conj, child_kind(a), MacroMod::none, 0, a, b, ""});
}

FId f_or(FId a, FId b) {
  require_same_kind(a, b);
  return arena().get({FOp::disj, child_kind(a), MacroMod::none, 0, a, b, ""});
}

FId f_implies(FId a, FId b) {
  require_same_kind(a, b);
  return arena().get({FOp::impl, child_kind(a), MacroMod::none, 0, a, b, ""});
}

FId f_iff(FId a, FId b) {
  require_same_kind(a, b);
  return arena().get({FOp::iff, child_kind(a), MacroMod::none, 0, a, b, ""});
}

FId f_box(uint8_t rel, FId a) {
  Kind k = child_kind(a);
  if (rel >= num_base(k)) throw std::invalid_argument("relation code out of range");
  return arena().get({FOp::box, k, MacroMod::none, rel, a, -1, ""});
}

FId f_diamond(uint8_t rel, FId a) {
  Kind k = child_kind(a);
  if (rel >= num_base(k)) throw std::invalid_argument("relation code out of range");
  return arena().get({FOp::diamond, k, MacroMod::none, rel, a, -1, ""});
}

FId f_box_m(MacroMod m, FId a) {
  Kind k = child_kind(a);
  if (k == Kind::rcc5 && macro_rcc8_only(m))
    throw KindMismatch("macro is RCC8-only");
  return arena().get({FOp::box, k, m, 0, a, -1, ""});
}

FId f_diamond_m(MacroMod m, FId a) {
  Kind k = child_kind(a);
  if (k == Kind::rcc5 && macro_rcc8_only(m))
    throw KindMismatch("macro is RCC8-only");
  return arena().get({FOp::diamond, k, m, 0, a, -1, ""});
}

FId f_nom(FId a) { return arena().get({FOp::nom, child_kind(a), MacroMod::none, 0, a, -1, ""}); }

FId f_and_all(Kind k, const std::vector<FId>& conjuncts) {
  if (conjuncts.empty()) return f_true(k);
  FId acc = conjuncts[0];
  for (size_t i = 1; i < conjuncts.size(); ++i) acc = f_and(acc, conjuncts[i]);
  return acc;
}

FId f_or_all(Kind k, const std::vector<FId>& disjuncts) {
  if (disjuncts.empty()) return f_false(k);
  FId acc = disjuncts[0];
  for (size_t i = 1; i < disjuncts.size(); ++i) acc = f_or(acc, disjuncts[i]);
  return acc;
}

Kind formula_kind(FId id) { return fnode(id).kind; }

static void collect_vars(FId id, std::set<std::string>& out) {
  const auto& n = fnode(id);
  if (n.op == FOp::var) out.insert(n.name);
  if (n.a >= 0) collect_vars(n.a, out);
  if (n.b >= 0) collect_vars(n.b, out);
}

std::set<std::string> vars_of(FId id) {
  std::set<std::string> out;
  collect_vars(id, out);
  return out;
}

int formula_size(FId id) {
  const auto& n = fnode(id);
  int sz = 1;
  if (n.a >= 0) sz += formula_size(n.a);
  if (n.b >= 0) sz += formula_size(n.b);
  return sz;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool try_eat(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size() || !(text[pos] >= 'a' && text[pos] <= 'z'))
      throw ParseError("expected identifier", pos);
    ++pos;
    while (pos < text.size() && (isalnum(uint8_t(text[pos])) || text[pos] == '_')) ++pos;
    return text.substr(start, pos - start);
  }
};

struct ModSpec {
  bool is_base;
  uint8_t base;
  MacroMod macro;
};

ModSpec parse_mod(const std::string& name, Kind kind, size_t pos) {
  static const std::map<std::string, MacroMod> macros = {
      {"u", MacroMod::u},       {"d", MacroMod::d},       {"next", MacroMod::next},
      {"prev", MacroMod::prev}, {"right", MacroMod::right}, {"up", MacroMod::up},
      {"left", MacroMod::left}, {"down", MacroMod::down}};
  // "pp"/"ppi" are base relations in RCC5 mode and macros in RCC8 mode;
  // the alphabet flag decides, never inference.
  if (kind == Kind::rcc8) {
    if (name == "pp") return {false, 0, MacroMod::pp};
    if (name == "ppi") return {false, 0, MacroMod::ppi};
  }
  auto it = macros.find(name);
  if (it != macros.end()) return {false, 0, it->second};
  try {
    return {true, parse_rel(kind, name), MacroMod::none};
  } catch (const std::invalid_argument&) {
    throw ParseError("unknown modality: " + name, pos);
  }
}

struct Parser {
  Lexer lex;
  Kind kind;

  FId formula() { return iff(); }

  FId iff() {
    FId lhs = implies();
    while (lex.try_eat("<->")) lhs = f_iff(lhs, implies());
    return lhs;
  }

  FId implies() {
    FId lhs = disj();
    if (lex.try_eat("->")) return f_implies(lhs, implies());  // right-assoc
    return lhs;
  }

  FId disj() {
    FId lhs = conj();
    while (true) {
      lex.skip_ws();
      if (lex.pos < lex.text.size() && lex.text[lex.pos] == '|') {
        ++lex.pos;
        lhs = f_or(lhs, conj());
      } else {
        return lhs;
      }
    }
  }

  FId conj() {
    FId lhs = unary();
    while (lex.try_eat("&")) lhs = f_and(lhs, unary());
    return lhs;
  }

  FId unary() {
    lex.skip_ws();
    size_t pos = lex.pos;
    if (lex.try_eat("!")) return f_not(unary());
    if (lex.try_eat("[")) {
      std::string m = lex.ident();
      if (!lex.try_eat("]")) throw ParseError("expected ]", lex.pos);
      ModSpec spec = parse_mod(m, kind, pos);
      FId body = unary();
      return spec.is_base ? f_box(spec.base, body) : f_box_m(spec.macro, body);
    }
    // '<' starts a diamond only when not the '<->' connective
    lex.skip_ws();
    if (lex.pos < lex.text.size() && lex.text[lex.pos] == '<' &&
        (lex.pos + 1 >= lex.text.size() || lex.text[lex.pos + 1] != '-')) {
      ++lex.pos;
      std::string m = lex.ident();
      if (!lex.try_eat(">")) throw ParseError("expected >", lex.pos);
      ModSpec spec = parse_mod(m, kind, pos);
      FId body = unary();
      return spec.is_base ? f_diamond(spec.base, body) : f_diamond_m(spec.macro, body);
    }
    return atom();
  }

  FId atom() {
    lex.skip_ws();
    size_t pos = lex.pos;
    if (lex.try_eat("(")) {
      FId inner = formula();
      if (!lex.try_eat(")")) throw ParseError("expected )", lex.pos);
      return inner;
    }
    std::string id = lex.ident();
    if (id == "true") return f_true(kind);
    if (id == "false") return f_false(kind);
    if (id == "nom") {
      if (!lex.try_eat("(")) throw ParseError("expected ( after nom", lex.pos);
      FId inner = formula();
      if (!lex.try_eat(")")) throw ParseError("expected )", lex.pos);
      return f_nom(inner);
    }
    (void)pos;
    return f_var(kind, id);
  }
};

}  // namespace

FId parse_formula(const std::string& text, Kind kind) {
  Parser p{Lexer{text}, kind};
  FId f = p.formula();
  if (!p.lex.eof()) throw ParseError("trailing input", p.lex.pos);
  return f;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr const char* kMacroNames[] = {"", "u", "d", "pp", "ppi", "next", "prev",
                                       "right", "up", "left", "down"};

// precedence levels: 0 iff, 1 impl, 2 disj, 3 conj, 4 unary
void print_rec(FId id, int level, std::string& out) {
  const auto& n = fnode(id);
  auto wrap = [&](int mine, auto&& body) {
    bool paren = mine < level;
    if (paren) out += "(";
    body();
    if (paren) out += ")";
  };
  switch (n.op) {
    case FOp::tru:
      out += "true";
      break;
    case FOp::var:
      out += n.name;
      break;
    case FOp::neg:
      if (fnode(n.a).op == FOp::tru) {
        out += "false";
      } else {
        out += "!";
        print_rec(n.a, 4, out);
      }
      break;
    case FOp::conj:
      wrap(3, [&] {
        print_rec(n.a, 3, out);
        out += " & ";
        print_rec(n.b, 4, out);
      });
      break;
    case FOp::disj:
      wrap(2, [&] {
        print_rec(n.a, 2, out);
        out += " | ";
        print_rec(n.b, 3, out);
      });
      break;
    case FOp::impl:
      wrap(1, [&] {
        print_rec(n.a, 2, out);
        out += " -> ";
        print_rec(n.b, 1, out);
      });
      break;
    case FOp::iff:
      wrap(0, [&] {
        print_rec(n.a, 0, out);
        out += " <-> ";
        print_rec(n.b, 1, out);
      });
      break;
    case FOp::box:
    case FOp::diamond: {
      std::string name = n.macro == MacroMod::none ? rel_name(n.kind, n.base_rel)
                                                   : std::string(kMacroNames[int(n.macro)]);
      out += n.op == FOp::box ? "[" : "<";
      out += name;
      out += n.op == FOp::box ? "]" : ">";
      print_rec(n.a, 4, out);
      break;
    }
    case FOp::nom:
      out += "nom(";
      print_rec(n.a, 0, out);
      out += ")";
      break;
  }
}

}  // namespace

std::string print_formula(FId id) {
  std::string out;
  print_rec(id, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Macro expansion to the core

namespace {

std::map<FId, FId>& expand_memo() {
  static std::map<FId, FId> memo;
  return memo;
}

FId box_d_core(Kind kind, FId core_body) {
  std::vector<FId> parts;
  uint8_t eq = kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
  for (uint8_t r = 0; r < num_base(kind); ++r)
    if (r != eq) parts.push_back(f_box(r, core_body));
  return f_and_all(kind, parts);
}

FId expand_rec(FId id);

FId grid_diamond(Kind kind, Rel8 step, bool via_c, FId body) {
  // <tpp>(a ∧ !b ∧ <tpp> (a ∧ b ∧ body)) and the c-region variant; the
  // tppi versions walk the same gadgets backwards.
  FId va = f_var(kind, "a"), vb = f_var(kind, "b"), vc = f_var(kind, "c");
  uint8_t r = uint8_t(step);
  FId inner = f_and(f_and(va, vb), body);
  FId mid = via_c ? f_and(vc, f_diamond(r, inner))
                  : f_and(f_and(va, f_not(vb)), f_diamond(r, inner));
  return f_diamond(r, mid);
}

FId expand_diamond_macro(Kind kind, MacroMod m, FId body) {
  switch (m) {
    case MacroMod::u:  // dia_u phi = !(phi' ∧ box_d phi') with phi' = !phi
      return f_not(f_and(f_not(body), box_d_core(kind, f_not(body))));
    case MacroMod::d:
      return f_not(box_d_core(kind, f_not(body)));
    case MacroMod::pp:
      return f_not(f_and(f_box(uint8_t(Rel8::tpp), f_not(body)),
                         f_box(uint8_t(Rel8::ntpp), f_not(body))));
    case MacroMod::ppi:
      return f_not(f_and(f_box(uint8_t(Rel8::tppi), f_not(body)),
                         f_box(uint8_t(Rel8::ntppi), f_not(body))));
    case MacroMod::next:
      return grid_diamond(kind, Rel8::tpp, false, body);
    case MacroMod::prev:
      return grid_diamond(kind, Rel8::tppi, false, body);
    case MacroMod::right:
      return grid_diamond(kind, Rel8::tpp, true, body);
    case MacroMod::left:
      return grid_diamond(kind, Rel8::tppi, true, body);
    case MacroMod::up:
      // one step right, then one step ahead in the enumeration
      return grid_diamond(kind, Rel8::tpp, true, grid_diamond(kind, Rel8::tpp, false, body));
    case MacroMod::down:
      // one step back in the enumeration, then one step left; this is the
      // inverse path of `up`, which is what makes the wall reachable
      return grid_diamond(kind, Rel8::tppi, false, grid_diamond(kind, Rel8::tppi, true, body));
    default:
      throw std::logic_error("expand: bad macro");
  }
}

FId expand_rec(FId id) {
  auto it = expand_memo().find(id);
  if (it != expand_memo().end()) return it->second;
  const FormulaNode n = fnode(id);
  FId out = -1;
  switch (n.op) {
    case FOp::tru:
    case FOp::var:
      out = id;
      break;
    case FOp::neg:
      out = f_not(expand_rec(n.a));
      break;
    case FOp::conj:
      out = f_and(expand_rec(n.a), expand_rec(n.b));
      break;
    case FOp::disj:
      out = f_not(f_and(f_not(expand_rec(n.a)), f_not(expand_rec(n.b))));
      break;
    case FOp::impl:
      out = f_not(f_and(expand_rec(n.a), f_not(expand_rec(n.b))));
      break;
    case FOp::iff: {
      FId a = expand_rec(n.a), b = expand_rec(n.b);
      out = f_and(f_not(f_and(a, f_not(b))), f_not(f_and(b, f_not(a))));
      break;
    }
    case FOp::box:
      if (n.macro == MacroMod::none) {
        out = f_box(n.base_rel, expand_rec(n.a));
      } else if (n.macro == MacroMod::next || n.macro == MacroMod::prev ||
                 n.macro == MacroMod::right || n.macro == MacroMod::up ||
                 n.macro == MacroMod::left || n.macro == MacroMod::down) {
        // duals of the grid-walking diamonds
        out = expand_rec(f_not(expand_diamond_macro(n.kind, n.macro, f_not(n.a))));
      } else if (n.macro == MacroMod::u) {
        FId body = expand_rec(n.a);
        out = f_and(body, box_d_core(n.kind, body));
      } else if (n.macro == MacroMod::d) {
        out = box_d_core(n.kind, expand_rec(n.a));
      } else if (n.macro == MacroMod::pp) {
        FId body = expand_rec(n.a);
        out = f_and(f_box(uint8_t(Rel8::tpp), body), f_box(uint8_t(Rel8::ntpp), body));
      } else if (n.macro == MacroMod::ppi) {
        FId body = expand_rec(n.a);
        out = f_and(f_box(uint8_t(Rel8::tppi), body), f_box(uint8_t(Rel8::ntppi), body));
      } else {
        throw std::logic_error("expand: bad box macro");
      }
      break;
    case FOp::diamond:
      if (n.macro == MacroMod::none) {
        out = f_not(f_box(n.base_rel, f_not(expand_rec(n.a))));
      } else {
        out = expand_rec(expand_diamond_macro(n.kind, n.macro, expand_rec(n.a)));
      }
      break;
    case FOp::nom: {
      // nom(phi) = dia_u(phi ∧ box_d !phi)
      FId body = expand_rec(n.a);
      FId inner = f_and(body, box_d_core(n.kind, f_not(body)));
      out = f_not(f_and(f_not(inner), box_d_core(n.kind, f_not(inner))));
      break;
    }
  }
  expand_memo()[id] = out;
  return out;
}

}  // namespace

FId expand(FId id) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  return expand_rec(id);
}

bool rule_cov_check(FId premise, const std::string& nominal) {
  const auto& n = fnode(premise);
  if (n.op != FOp::impl) return false;
  const auto& lhs = fnode(n.a);
  if (lhs.op != FOp::var || lhs.name != nominal) return false;
  return vars_of(n.b).count(nominal) == 0;
}

}  // namespace rcc
