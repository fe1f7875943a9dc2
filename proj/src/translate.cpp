#include "rcc/translate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rcc {

namespace {

char other(char v) { return v == 'x' ? 'y' : 'x'; }

void need_var(char v) {
  if (v != 'x' && v != 'y') throw std::invalid_argument("FO2 variables are x and y only");
}

}  // namespace

Fo2Ptr fo_rel(Kind kind, uint8_t rel, char v, char w) {
  need_var(v);
  need_var(w);
  if (rel >= num_base(kind)) throw std::invalid_argument("relation code out of range");
  auto n = std::make_shared<Fo2Node>();
  n->op = Fo2Op::atom2;
  n->kind = kind;
  n->rel = rel;
  n->v = v;
  n->w = w;
  return n;
}

Fo2Ptr fo_eq(char v, char w) {
  need_var(v);
  need_var(w);
  auto n = std::make_shared<Fo2Node>();
  n->op = Fo2Op::eqv;
  n->v = v;
  n->w = w;
  return n;
}

Fo2Ptr fo_pred(const std::string& name, char v) {
  need_var(v);
  auto n = std::make_shared<Fo2Node>();
  n->op = Fo2Op::atom1;
  n->pred = name;
  n->v = v;
  return n;
}

Fo2Ptr fo_not(Fo2Ptr a) {
  auto n = std::make_shared<Fo2Node>();
  n->op = Fo2Op::neg;
  n->a = std::move(a);
  return n;
}

Fo2Ptr fo_and(Fo2Ptr a, Fo2Ptr b) {
  auto n = std::make_shared<Fo2Node>();
  n->op = Fo2Op::conj;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Fo2Ptr fo_exists(char v, Fo2Ptr a) {
  need_var(v);
  auto n = std::make_shared<Fo2Node>();
  n->op = Fo2Op::exists;
  n->v = v;
  n->a = std::move(a);
  return n;
}

bool fo2_equal(const Fo2Ptr& a, const Fo2Ptr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->op != b->op || a->kind != b->kind || a->rel != b->rel || a->v != b->v ||
      a->w != b->w || a->pred != b->pred)
    return false;
  return fo2_equal(a->a, b->a) && fo2_equal(a->b, b->b);
}

static void free_vars_rec(const Fo2Ptr& f, std::set<char>& out) {
  switch (f->op) {
    case Fo2Op::atom2:
    case Fo2Op::eqv:
      out.insert(f->v);
      out.insert(f->w);
      break;
    case Fo2Op::atom1:
      out.insert(f->v);
      break;
    case Fo2Op::neg:
      free_vars_rec(f->a, out);
      break;
    case Fo2Op::conj:
      free_vars_rec(f->a, out);
      free_vars_rec(f->b, out);
      break;
    case Fo2Op::exists: {
      std::set<char> inner;
      free_vars_rec(f->a, inner);
      inner.erase(f->v);
      out.insert(inner.begin(), inner.end());
      break;
    }
  }
}

std::set<char> fo2_free_vars(const Fo2Ptr& f) {
  std::set<char> out;
  free_vars_rec(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// S-expressions

std::string fo2_print(const Fo2Ptr& f) {
  switch (f->op) {
    case Fo2Op::atom2:
      return "(" + rel_name(f->kind, f->rel) + " " + f->v + " " + f->w + ")";
    case Fo2Op::eqv:
      return std::string("(= ") + f->v + " " + f->w + ")";
    case Fo2Op::atom1:
      return "(" + f->pred + " " + f->v + ")";
    case Fo2Op::neg:
      return "(not " + fo2_print(f->a) + ")";
    case Fo2Op::conj:
      return "(and " + fo2_print(f->a) + " " + fo2_print(f->b) + ")";
    case Fo2Op::exists:
      return std::string("(exists ") + f->v + " " + fo2_print(f->a) + ")";
  }
  throw std::logic_error("fo2_print: bad node");
}

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> items;
  bool is_atom() const { return items.empty() && atom != "()"; }
};

SExpr sexpr_parse(const std::string& text, size_t& pos) {
  auto skip = [&] {
    while (pos < text.size() && isspace(uint8_t(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size()) throw std::invalid_argument("unexpected end of s-expression");
  if (text[pos] == '(') {
    ++pos;
    SExpr e;
    e.atom = "()";
    while (true) {
      skip();
      if (pos >= text.size()) throw std::invalid_argument("unclosed s-expression");
      if (text[pos] == ')') {
        ++pos;
        return e;
      }
      e.items.push_back(sexpr_parse(text, pos));
    }
  }
  size_t start = pos;
  while (pos < text.size() && !isspace(uint8_t(text[pos])) && text[pos] != '(' && text[pos] != ')')
    ++pos;
  SExpr e;
  e.atom = text.substr(start, pos - start);
  return e;
}

char var_of_token(const SExpr& e) {
  if (!e.is_atom() || (e.atom != "x" && e.atom != "y"))
    throw std::invalid_argument("expected variable x or y");
  return e.atom[0];
}

Fo2Ptr fo2_from_sexpr(const SExpr& e, Kind kind) {
  if (e.is_atom()) throw std::invalid_argument("bare atom in FO2 s-expression: " + e.atom);
  if (e.items.empty()) throw std::invalid_argument("empty s-expression");
  const std::string& head = e.items[0].atom;
  auto arg = [&](size_t i) -> const SExpr& {
    if (i >= e.items.size()) throw std::invalid_argument("missing argument for " + head);
    return e.items[i];
  };
  if (head == "not") return fo_not(fo2_from_sexpr(arg(1), kind));
  if (head == "and" || head == "or") {
    if (e.items.size() < 3) throw std::invalid_argument(head + " needs two arguments");
    std::vector<Fo2Ptr> parts;
    for (size_t i = 1; i < e.items.size(); ++i) parts.push_back(fo2_from_sexpr(e.items[i], kind));
    Fo2Ptr acc = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
      acc = head == "and" ? fo_and(acc, parts[i])
                          : fo_not(fo_and(fo_not(acc), fo_not(parts[i])));
    return acc;
  }
  if (head == "implies") {
    Fo2Ptr a = fo2_from_sexpr(arg(1), kind), b = fo2_from_sexpr(arg(2), kind);
    return fo_not(fo_and(a, fo_not(b)));
  }
  if (head == "iff") {
    Fo2Ptr a = fo2_from_sexpr(arg(1), kind), b = fo2_from_sexpr(arg(2), kind);
    return fo_and(fo_not(fo_and(a, fo_not(b))), fo_not(fo_and(b, fo_not(a))));
  }
  if (head == "exists") return fo_exists(var_of_token(arg(1)), fo2_from_sexpr(arg(2), kind));
  if (head == "forall")
    return fo_not(fo_exists(var_of_token(arg(1)), fo_not(fo2_from_sexpr(arg(2), kind))));
  if (head == "=") return fo_eq(var_of_token(arg(1)), var_of_token(arg(2)));
  // relation or unary predicate
  if (e.items.size() == 3) {
    uint8_t rel = parse_rel(kind, head);
    return fo_rel(kind, rel, var_of_token(arg(1)), var_of_token(arg(2)));
  }
  if (e.items.size() == 2) return fo_pred(head, var_of_token(arg(1)));
  throw std::invalid_argument("cannot parse s-expression headed by " + head);
}

}  // namespace

Fo2Ptr fo2_parse(const std::string& text, Kind kind) {
  size_t pos = 0;
  SExpr e = sexpr_parse(text, pos);
  while (pos < text.size() && isspace(uint8_t(text[pos]))) ++pos;
  if (pos != text.size()) throw std::invalid_argument("trailing input after s-expression");
  return fo2_from_sexpr(e, kind);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

bool eval_fo_rec(const RegionStructure& s, const Valuation& val, std::optional<int> x,
                 std::optional<int> y, const Fo2Ptr& f) {
  auto lookup = [&](char v) -> int {
    auto& slot = v == 'x' ? x : y;
    if (!slot) throw std::invalid_argument(std::string("unassigned free variable ") + v);
    return *slot;
  };
  switch (f->op) {
    case Fo2Op::atom2: {
      if (f->kind != s.kind) throw KindMismatch("FO2 relation alphabet mismatch");
      return s.rel(lookup(f->v), lookup(f->w)) == f->rel;
    }
    case Fo2Op::eqv:
      return lookup(f->v) == lookup(f->w);
    case Fo2Op::atom1: {
      auto it = val.find(f->pred);
      if (it == val.end()) return false;
      return it->second.count(s.regions[size_t(lookup(f->v))]) > 0;
    }
    case Fo2Op::neg:
      return !eval_fo_rec(s, val, x, y, f->a);
    case Fo2Op::conj:
      return eval_fo_rec(s, val, x, y, f->a) && eval_fo_rec(s, val, x, y, f->b);
    case Fo2Op::exists:
      for (int i = 0; i < s.size(); ++i) {
        if (f->v == 'x' ? eval_fo_rec(s, val, i, y, f->a) : eval_fo_rec(s, val, x, i, f->a))
          return true;
      }
      return false;
  }
  throw std::logic_error("eval_fo: bad node");
}

}  // namespace

bool eval_fo(const RegionStructure& s, const Valuation& v, const Fo2Assignment& asg,
             const Fo2Ptr& f) {
  std::optional<int> x, y;
  if (asg.x) {
    int i = s.index_of(*asg.x);
    if (i < 0) throw std::invalid_argument("unknown region " + *asg.x);
    x = i;
  }
  if (asg.y) {
    int i = s.index_of(*asg.y);
    if (i < 0) throw std::invalid_argument("unknown region " + *asg.y);
    y = i;
  }
  return eval_fo_rec(s, v, x, y, f);
}

// ---------------------------------------------------------------------------
// Standard translation (modal -> FO2)

namespace {

Fo2Ptr st_rec(FId phi, char v) {
  const auto& n = fnode(phi);
  char w = other(v);
  switch (n.op) {
    case FOp::tru:
      return fo_eq(v, v);
    case FOp::var:
      return fo_pred(n.name, v);
    case FOp::neg:
      return fo_not(st_rec(n.a, v));
    case FOp::conj:
      return fo_and(st_rec(n.a, v), st_rec(n.b, v));
    case FOp::disj:
      return fo_not(fo_and(fo_not(st_rec(n.a, v)), fo_not(st_rec(n.b, v))));
    case FOp::impl:
      return fo_not(fo_and(st_rec(n.a, v), fo_not(st_rec(n.b, v))));
    case FOp::iff: {
      Fo2Ptr a = st_rec(n.a, v), b = st_rec(n.b, v);
      return fo_and(fo_not(fo_and(a, fo_not(b))), fo_not(fo_and(b, fo_not(a))));
    }
    case FOp::box:
      if (n.macro != MacroMod::none) return st_rec(expand(phi), v);
      // [r]phi  ~>  not exists w (r(v,w) and not phi(w))
      return fo_not(
          fo_exists(w, fo_and(fo_rel(n.kind, n.base_rel, v, w), fo_not(st_rec(n.a, w)))));
    case FOp::diamond:
      if (n.macro != MacroMod::none) return st_rec(expand(phi), v);
      // <r>phi  ~>  exists w (r(v,w) and phi(w))
      return fo_exists(w, fo_and(fo_rel(n.kind, n.base_rel, v, w), st_rec(n.a, w)));
    case FOp::nom:
      return st_rec(expand(phi), v);
  }
  throw std::logic_error("modal_to_fo: bad node");
}

}  // namespace

Fo2Ptr modal_to_fo(FId phi) { return st_rec(phi, 'x'); }

// ---------------------------------------------------------------------------
// FO2 -> modal (the sigma_x / sigma_y translation)

namespace {

// Constant folding: the only simplification the translation performs.
bool is_top(FId f) { return fnode(f).op == FOp::tru; }
bool is_bot(FId f) {
  const auto& n = fnode(f);
  return n.op == FOp::neg && fnode(n.a).op == FOp::tru;
}

FId cf_not(FId a) {
  if (is_top(a)) return f_false(fnode(a).kind);
  if (is_bot(a)) return f_true(fnode(a).kind);
  return f_not(a);
}

FId cf_and(FId a, FId b) {
  if (is_bot(a) || is_bot(b)) return f_false(fnode(a).kind);
  if (is_top(a)) return b;
  if (is_top(b)) return a;
  return f_and(a, b);
}

FId cf_or(FId a, FId b) {
  if (is_top(a) || is_top(b)) return f_true(fnode(a).kind);
  if (is_bot(a)) return b;
  if (is_bot(b)) return a;
  return f_or(a, b);
}

FId cf_iff_const(FId a, bool value) { return value ? a : cf_not(a); }

FId cf_diamond(uint8_t rel, FId body) {
  if (is_bot(body)) return body;  // <r>false is false
  return f_diamond(rel, body);
}

struct Decomposition {
  // distinct leaves in first-occurrence order
  std::vector<Fo2Ptr> binaries;
  std::vector<Fo2Ptr> mine;    // unary atoms of the outer variable and exists-w subformulas
  std::vector<Fo2Ptr> theirs;  // unary atoms of the witness and exists-v subformulas
};

enum class LeafSide { binary, mine, theirs };

LeafSide classify_leaf(const Fo2Ptr& f, char v, char w) {
  switch (f->op) {
    case Fo2Op::atom2:
    case Fo2Op::eqv:
      if (f->v == f->w) return f->v == v ? LeafSide::mine : LeafSide::theirs;
      return LeafSide::binary;
    case Fo2Op::atom1:
      return f->v == v ? LeafSide::mine : LeafSide::theirs;
    case Fo2Op::exists:
      // a subformula binding w has free variables in {v} and vice versa
      return f->v == w ? LeafSide::mine : LeafSide::theirs;
    default:
      throw std::logic_error("classify_leaf: not a leaf");
  }
}

void find_or_add(std::vector<Fo2Ptr>& list, const Fo2Ptr& f) {
  for (const auto& g : list)
    if (fo2_equal(g, f)) return;
  list.push_back(f);
}

void decompose(const Fo2Ptr& f, char v, char w, Decomposition& out) {
  if (f->op == Fo2Op::neg) {
    decompose(f->a, v, w, out);
    return;
  }
  if (f->op == Fo2Op::conj) {
    decompose(f->a, v, w, out);
    decompose(f->b, v, w, out);
    return;
  }
  switch (classify_leaf(f, v, w)) {
    case LeafSide::binary:
      find_or_add(out.binaries, f);
      break;
    case LeafSide::mine:
      find_or_add(out.mine, f);
      break;
    case LeafSide::theirs:
      find_or_add(out.theirs, f);
      break;
  }
}

FId sigma(const Fo2Ptr& f, char v, Kind kind);

// Rebuild the Boolean matrix with binary atoms resolved against the
// guessed relation, outer-variable leaves fixed to their chosen truth
// values, and witness-side leaves replaced by their translations.
FId rebuild(const Fo2Ptr& f, char v, char w, Kind kind, const Decomposition& dec,
            uint8_t guess, const std::vector<bool>& wbits, const std::vector<FId>& theirs_tr) {
  if (f->op == Fo2Op::neg)
    return cf_not(rebuild(f->a, v, w, kind, dec, guess, wbits, theirs_tr));
  if (f->op == Fo2Op::conj)
    return cf_and(rebuild(f->a, v, w, kind, dec, guess, wbits, theirs_tr),
                  rebuild(f->b, v, w, kind, dec, guess, wbits, theirs_tr));
  switch (classify_leaf(f, v, w)) {
    case LeafSide::binary: {
      bool truth;
      uint8_t eq = kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
      if (f->op == Fo2Op::eqv) {
        truth = guess == eq;
      } else if (f->v == v) {  // q(v,w): true iff q is the guess
        truth = f->rel == guess;
      } else {  // q(w,v): true iff q is the converse of the guess
        truth = f->rel == converse(kind, guess);
      }
      return truth ? f_true(kind) : f_false(kind);
    }
    case LeafSide::mine:
      for (size_t i = 0; i < dec.mine.size(); ++i)
        if (fo2_equal(dec.mine[i], f)) return wbits[i] ? f_true(kind) : f_false(kind);
      throw std::logic_error("rebuild: missing leaf");
    case LeafSide::theirs:
      for (size_t i = 0; i < dec.theirs.size(); ++i)
        if (fo2_equal(dec.theirs[i], f)) return theirs_tr[i];
      throw std::logic_error("rebuild: missing leaf");
  }
  throw std::logic_error("rebuild: bad node");
}

FId sigma_exists(const Fo2Ptr& f, char v, Kind kind) {
  const char w = f->v;
  Decomposition dec;
  decompose(f->a, v, w, dec);

  std::vector<FId> mine_tr, theirs_tr;
  for (const auto& g : dec.mine) mine_tr.push_back(sigma(g, v, kind));
  for (const auto& g : dec.theirs) theirs_tr.push_back(sigma(g, w, kind));

  // case split over the truth values of the outer-variable subformulas,
  // then a disjunction over the relation holding between v and the witness
  const size_t l = dec.mine.size();
  FId result = f_false(kind);
  for (uint64_t m = 0; m < (uint64_t(1) << l); ++m) {
    std::vector<bool> wbits(l);
    for (size_t i = 0; i < l; ++i) wbits[i] = (m >> i) & 1;
    FId fixed = f_true(kind);
    for (size_t i = 0; i < l; ++i) fixed = cf_and(fixed, cf_iff_const(mine_tr[i], wbits[i]));
    if (is_bot(fixed)) continue;
    FId dis = f_false(kind);
    for (uint8_t r = 0; r < num_base(kind); ++r)
      dis = cf_or(dis, cf_diamond(r, rebuild(f->a, v, w, kind, dec, r, wbits, theirs_tr)));
    result = cf_or(result, cf_and(fixed, dis));
  }
  return result;
}

FId sigma(const Fo2Ptr& f, char v, Kind kind) {
  uint8_t eq = kind == Kind::rcc8 ? uint8_t(Rel8::eq) : uint8_t(Rel5::eq);
  switch (f->op) {
    case Fo2Op::atom1:
      if (f->v != v) throw std::logic_error("sigma: unary atom of the wrong variable");
      return f_var(kind, f->pred);
    case Fo2Op::atom2:
      if (f->v != f->w || f->v != v) throw std::logic_error("sigma: binary atom outside exists");
      return f->rel == eq ? f_true(kind) : f_false(kind);
    case Fo2Op::eqv:
      if (f->v != f->w || f->v != v) throw std::logic_error("sigma: equality outside exists");
      return f_true(kind);
    case Fo2Op::neg:
      return cf_not(sigma(f->a, v, kind));
    case Fo2Op::conj:
      return cf_and(sigma(f->a, v, kind), sigma(f->b, v, kind));
    case Fo2Op::exists:
      if (f->v == v) {
        // rebinds the current variable, so there is no free occurrence of
        // it inside; translate from the other side instead
        return sigma(f, other(v), kind);
      }
      return sigma_exists(f, v, kind);
  }
  throw std::logic_error("sigma: bad node");
}

}  // namespace

FId fo2_to_modal(const Fo2Ptr& f, Kind kind) {
  auto free = fo2_free_vars(f);
  if (free.count('y')) throw std::invalid_argument("fo2_to_modal: free variable must be x");
  return sigma(f, 'x', kind);
}

Fo2Ptr succinctness_formula(int n) {
  if (n < 1) throw std::invalid_argument("succinctness_formula: n must be >= 1");
  auto pvar = [&](int i, char v) { return fo_pred("p" + std::to_string(i), v); };
  auto iff = [&](Fo2Ptr a, Fo2Ptr b) {
    return fo_and(fo_not(fo_and(a, fo_not(b))), fo_not(fo_and(b, fo_not(a))));
  };
  Fo2Ptr agree;
  for (int i = 0; i < n; ++i) {
    Fo2Ptr c = iff(pvar(i, 'x'), pvar(i, 'y'));
    agree = agree ? fo_and(agree, c) : c;
  }
  Fo2Ptr body = fo_not(fo_and(agree, fo_not(iff(pvar(n, 'x'), pvar(n, 'y')))));
  return fo_not(fo_exists('x', fo_not(fo_not(fo_exists('y', fo_not(body))))));
}

}  // namespace rcc
