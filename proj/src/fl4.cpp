#include <algorithm>
#include <map>

#include "rcc/translate.hpp"

namespace rcc {

Fl4Ptr fl4_less(const std::string& a, const std::string& b) {
  auto n = std::make_shared<Fl4Node>();
  n->op = Fl4Op::less;
  n->a_var = a;
  n->b_var = b;
  return n;
}

Fl4Ptr fl4_eq(const std::string& a, const std::string& b) {
  auto n = std::make_shared<Fl4Node>();
  n->op = Fl4Op::eqc;
  n->a_var = a;
  n->b_var = b;
  return n;
}

Fl4Ptr fl4_pred(const std::string& name, std::vector<std::string> tuple) {
  auto n = std::make_shared<Fl4Node>();
  n->op = Fl4Op::pred;
  n->pred = name;
  n->tuple = std::move(tuple);
  return n;
}

Fl4Ptr fl4_exists_pred(std::vector<std::string> tuple) {
  auto n = std::make_shared<Fl4Node>();
  n->op = Fl4Op::exists_p;
  n->tuple = std::move(tuple);
  return n;
}

Fl4Ptr fl4_not(Fl4Ptr a) {
  auto n = std::make_shared<Fl4Node>();
  n->op = Fl4Op::neg;
  n->a = std::move(a);
  return n;
}

Fl4Ptr fl4_and(Fl4Ptr a, Fl4Ptr b) {
  auto n = std::make_shared<Fl4Node>();
  n->op = Fl4Op::conj;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

Fl4Ptr fl4_and_all(const std::vector<Fl4Ptr>& parts) {
  if (parts.empty()) throw std::invalid_argument("fl4_and_all needs at least one conjunct");
  Fl4Ptr acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = fl4_and(acc, parts[i]);
  return acc;
}

Fl4Ptr fl4_exists(std::vector<std::string> tuple, Fl4Ptr body) {
  auto n = std::make_shared<Fl4Node>();
  n->op = Fl4Op::exists_tuple;
  n->tuple = std::move(tuple);
  n->a = std::move(body);
  return n;
}

std::string fl4_print(const Fl4Ptr& f) {
  switch (f->op) {
    case Fl4Op::less:
      return "(< " + f->a_var + " " + f->b_var + ")";
    case Fl4Op::eqc:
      return "(= " + f->a_var + " " + f->b_var + ")";
    case Fl4Op::pred:
    case Fl4Op::exists_p: {
      std::string out = "(" + (f->op == Fl4Op::pred ? f->pred : std::string("exists-region"));
      for (const auto& v : f->tuple) out += " " + v;
      return out + ")";
    }
    case Fl4Op::neg:
      return "(not " + fl4_print(f->a) + ")";
    case Fl4Op::conj:
      return "(and " + fl4_print(f->a) + " " + fl4_print(f->b) + ")";
    case Fl4Op::exists_tuple: {
      std::string out = "(exists (";
      for (size_t i = 0; i < f->tuple.size(); ++i) out += (i ? " " : "") + f->tuple[i];
      return out + ") " + fl4_print(f->a) + ")";
    }
  }
  throw std::logic_error("fl4_print: bad node");
}

namespace {

Fl4Ptr leq(const std::string& a, const std::string& b) { return fl4_not(fl4_less(b, a)); }

}  // namespace

Fl4Ptr fl4_rect(int n, const std::vector<std::string>& t) {
  std::vector<Fl4Ptr> parts;
  for (int d = 0; d < n; ++d) parts.push_back(fl4_less(t[size_t(2 * d)], t[size_t(2 * d + 1)]));
  return fl4_and_all(parts);
}

Fl4Ptr fl4_rel_formula(Rel8 r, int n, const std::vector<std::string>& s,
                       const std::vector<std::string>& t) {
  if (int(s.size()) != 2 * n || int(t.size()) != 2 * n)
    throw std::invalid_argument("fl4_rel_formula: tuple width must be 2n");
  auto lo = [&](const std::vector<std::string>& u, int d) { return u[size_t(2 * d)]; };
  auto hi = [&](const std::vector<std::string>& u, int d) { return u[size_t(2 * d + 1)]; };

  // contact, interior overlap, containment, strict containment, equality,
  // each as a per-dimension conjunction
  std::vector<Fl4Ptr> contact, int_meet, sub_st, ssub_st, sub_ts, ssub_ts, equal;
  for (int d = 0; d < n; ++d) {
    contact.push_back(fl4_and(leq(lo(s, d), hi(t, d)), leq(lo(t, d), hi(s, d))));
    int_meet.push_back(fl4_and(fl4_less(lo(s, d), hi(t, d)), fl4_less(lo(t, d), hi(s, d))));
    sub_st.push_back(fl4_and(leq(lo(t, d), lo(s, d)), leq(hi(s, d), hi(t, d))));
    ssub_st.push_back(fl4_and(fl4_less(lo(t, d), lo(s, d)), fl4_less(hi(s, d), hi(t, d))));
    sub_ts.push_back(fl4_and(leq(lo(s, d), lo(t, d)), leq(hi(t, d), hi(s, d))));
    ssub_ts.push_back(fl4_and(fl4_less(lo(s, d), lo(t, d)), fl4_less(hi(t, d), hi(s, d))));
    equal.push_back(fl4_and(fl4_eq(lo(s, d), lo(t, d)), fl4_eq(hi(s, d), hi(t, d))));
  }
  Fl4Ptr C = fl4_and_all(contact), M = fl4_and_all(int_meet);
  Fl4Ptr S = fl4_and_all(sub_st), I = fl4_and_all(ssub_st);
  Fl4Ptr Si = fl4_and_all(sub_ts), Ii = fl4_and_all(ssub_ts);
  Fl4Ptr E = fl4_and_all(equal);
  switch (r) {
    case Rel8::dc: return fl4_not(C);
    case Rel8::ec: return fl4_and(C, fl4_not(M));
    case Rel8::po: return fl4_and(fl4_and(M, fl4_not(S)), fl4_not(Si));
    case Rel8::eq: return E;
    case Rel8::tpp: return fl4_and(fl4_and(S, fl4_not(I)), fl4_not(E));
    case Rel8::ntpp: return I;
    case Rel8::tppi: return fl4_and(fl4_and(Si, fl4_not(Ii)), fl4_not(E));
    case Rel8::ntppi: return Ii;
  }
  throw std::logic_error("fl4_rel_formula: bad relation");
}

namespace {

std::vector<std::string> tuple_names(char base, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= 2 * n; ++i) out.push_back(std::string(1, base) + std::to_string(i));
  return out;
}

Fl4Ptr guard(int n, const std::vector<std::string>& t) {
  return fl4_and(fl4_rect(n, t), fl4_exists_pred(t));
}

Fl4Ptr s_translate(FId phi, int n, const std::vector<std::string>& cur,
                   const std::vector<std::string>& nxt) {
  const auto& node = fnode(phi);
  switch (node.op) {
    case FOp::tru:
      return guard(n, cur);  // truth at a region: the tuple is a model region
    case FOp::var:
      return fl4_and(guard(n, cur), fl4_pred(node.name, cur));
    case FOp::conj:
      return fl4_and(s_translate(node.a, n, cur, nxt), s_translate(node.b, n, cur, nxt));
    case FOp::neg:
      return fl4_and(guard(n, cur), fl4_not(s_translate(node.a, n, cur, nxt)));
    case FOp::box: {
      if (node.macro != MacroMod::none || node.kind != Kind::rcc8) break;
      // [r]phi = !<r>!phi, with the diamond clause applied mechanically
      Fl4Ptr dia = fl4_and(
          guard(n, cur),
          fl4_exists(nxt, fl4_and(fl4_rel_formula(Rel8(node.base_rel), n, cur, nxt),
                                  fl4_and(guard(n, nxt),
                                          fl4_not(s_translate(node.a, n, nxt, cur))))));
      return fl4_and(guard(n, cur), fl4_not(dia));
    }
    default:
      break;
  }
  throw std::invalid_argument("modal_to_fl4 expects a macro-expanded core RCC8 formula");
}

}  // namespace

Fl4Ptr modal_to_fl4(FId phi, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("modal_to_fl4 supports n = 1 and n = 2 only");
  if (formula_kind(phi) != Kind::rcc8) throw KindMismatch("modal_to_fl4 expects an RCC8 formula");
  auto xs = tuple_names('x', n), ys = tuple_names('y', n);
  Fl4Ptr body = s_translate(expand(phi), n, xs, ys);
  // the forall-closure over region-encoding tuples, written with exists
  return fl4_not(fl4_exists(xs, fl4_and(guard(n, xs), fl4_not(body))));
}

// ---------------------------------------------------------------------------
// Finite evaluation

Fl4Model fl4_model_from_intervals(const std::vector<std::string>& names,
                                  const std::vector<IntervalUnion>& regions, const Valuation& v) {
  Fl4Model m;
  m.n = 1;
  m.names = names;
  for (const auto& r : regions) {
    if (r.pieces().size() != 1)
      throw std::invalid_argument("fl4 models need single-interval regions");
    m.boxes.push_back(HyperRect({r.pieces()[0]}));
  }
  m.valuation = v;
  return m;
}

Fl4Model fl4_model_from_boxes(const std::vector<std::string>& names,
                              const std::vector<HyperRect>& boxes, const Valuation& v) {
  Fl4Model m;
  m.n = boxes.empty() ? 2 : int(boxes[0].dims.size());
  m.names = names;
  m.boxes = boxes;
  for (const auto& b : boxes)
    if (int(b.dims.size()) != m.n) throw std::invalid_argument("mixed dimensions in fl4 model");
  m.valuation = v;
  return m;
}

namespace {

struct Fl4Eval {
  const Fl4Model& model;
  std::vector<Rational> coords;  // all endpoints, sorted, deduplicated
  std::map<std::string, Rational> env;

  explicit Fl4Eval(const Fl4Model& m) : model(m) {
    for (const auto& b : m.boxes)
      for (const auto& iv : b.dims) {
        coords.push_back(iv.lo);
        coords.push_back(iv.hi);
      }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  }

  std::vector<Rational> tuple_values(const std::vector<std::string>& tuple) {
    std::vector<Rational> out;
    for (const auto& v : tuple) {
      auto it = env.find(v);
      if (it == env.end()) throw std::invalid_argument("unbound coordinate variable " + v);
      out.push_back(it->second);
    }
    return out;
  }

  int region_of(const std::vector<Rational>& vals) {
    for (size_t r = 0; r < model.boxes.size(); ++r) {
      const auto& b = model.boxes[r];
      bool match = true;
      for (size_t d = 0; d < b.dims.size() && match; ++d)
        match = vals[2 * d] == b.dims[d].lo && vals[2 * d + 1] == b.dims[d].hi;
      if (match) return int(r);
    }
    return -1;
  }

  // a quantifier whose body contains exists-region(tuple) as a conjunct
  // only ranges over region encodings
  bool guarded_by_exists(const Fl4Ptr& body, const std::vector<std::string>& tuple) {
    if (body->op == Fl4Op::exists_p) return body->tuple == tuple;
    if (body->op == Fl4Op::conj)
      return guarded_by_exists(body->a, tuple) || guarded_by_exists(body->b, tuple);
    return false;
  }

  bool eval(const Fl4Ptr& f) {
    switch (f->op) {
      case Fl4Op::less:
        return env.at(f->a_var) < env.at(f->b_var);
      case Fl4Op::eqc:
        return env.at(f->a_var) == env.at(f->b_var);
      case Fl4Op::exists_p:
        return region_of(tuple_values(f->tuple)) >= 0;
      case Fl4Op::pred: {
        int r = region_of(tuple_values(f->tuple));
        if (r < 0) return false;
        auto it = model.valuation.find(f->pred);
        if (it == model.valuation.end()) return false;
        return it->second.count(model.names[size_t(r)]) > 0;
      }
      case Fl4Op::neg:
        return !eval(f->a);
      case Fl4Op::conj:
        return eval(f->a) && eval(f->b);
      case Fl4Op::exists_tuple: {
        // alternating translations reuse tuple names, so shadowed outer
        // bindings must be restored on the way out
        std::map<std::string, std::optional<Rational>> saved;
        for (const auto& v : f->tuple) {
          auto it = env.find(v);
          saved[v] = it == env.end() ? std::nullopt : std::optional<Rational>(it->second);
        }
        auto restore = [&] {
          for (const auto& [v, old] : saved) {
            if (old)
              env[v] = *old;
            else
              env.erase(v);
          }
        };
        bool found = false;
        if (guarded_by_exists(f->a, f->tuple)) {
          for (const auto& b : model.boxes) {
            for (size_t d = 0; d < b.dims.size(); ++d) {
              env[f->tuple[2 * d]] = b.dims[d].lo;
              env[f->tuple[2 * d + 1]] = b.dims[d].hi;
            }
            if (eval(f->a)) { found = true; break; }
          }
        } else {
          // unguarded: full grid over the endpoint coordinates
          std::vector<size_t> idx(f->tuple.size(), 0);
          while (!found) {
            for (size_t i = 0; i < f->tuple.size(); ++i) env[f->tuple[i]] = coords[idx[i]];
            if (eval(f->a)) { found = true; break; }
            size_t d = 0;
            for (; d < idx.size(); ++d) {
              if (++idx[d] < coords.size()) break;
              idx[d] = 0;
            }
            if (d == idx.size()) break;
          }
        }
        restore();
        return found;
      }
    }
    throw std::logic_error("eval_fl4: bad node");
  }
};

}  // namespace

bool eval_fl4(const Fl4Model& model, const Fl4Ptr& sentence) {
  if (model.boxes.empty()) throw std::invalid_argument("eval_fl4: empty model");
  Fl4Eval ev(model);
  return ev.eval(sentence);
}

}  // namespace rcc
