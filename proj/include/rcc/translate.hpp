#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rcc/geometry.hpp"
#include "rcc/logic.hpp"
#include "rcc/structures.hpp"

namespace rcc {

// ---------------------------------------------------------------------------
// Two-variable monadic first-order logic over the relation vocabulary.
// Variables are exactly x and y; connectives are neg/conj/exists, with
// forall and the other Booleans desugared at parse time.

enum class Fo2Op : uint8_t { atom2, eqv, atom1, neg, conj, exists };

struct Fo2Node;
using Fo2Ptr = std::shared_ptr<const Fo2Node>;

struct Fo2Node {
  Fo2Op op;
  Kind kind = Kind::rcc8;  // alphabet of relation atoms
  uint8_t rel = 0;         // atom2
  char v = 'x', w = 'y';   // atom variables; exists binds v
  std::string pred;        // atom1 predicate name
  Fo2Ptr a, b;
};

Fo2Ptr fo_rel(Kind kind, uint8_t rel, char v, char w);
Fo2Ptr fo_eq(char v, char w);
Fo2Ptr fo_pred(const std::string& name, char v);
Fo2Ptr fo_not(Fo2Ptr a);
Fo2Ptr fo_and(Fo2Ptr a, Fo2Ptr b);
Fo2Ptr fo_exists(char v, Fo2Ptr a);

bool fo2_equal(const Fo2Ptr& a, const Fo2Ptr& b);
std::set<char> fo2_free_vars(const Fo2Ptr& f);

// S-expression form, e.g. (exists y (and (ec x y) (p y))).
std::string fo2_print(const Fo2Ptr& f);
Fo2Ptr fo2_parse(const std::string& text, Kind kind);  // accepts or/implies/iff/forall sugar

// Tarskian evaluation over a finite structure; quantifiers range over
// all regions. Free variables must be assigned.
struct Fo2Assignment {
  std::optional<std::string> x, y;
};
bool eval_fo(const RegionStructure& s, const Valuation& v, const Fo2Assignment& asg,
             const Fo2Ptr& f);

// Standard translation; the result has free variable x and is linear in
// the size of the input.
Fo2Ptr modal_to_fo(FId phi);

// Inverse translation: free variable at most x; output can be
// exponentially larger. Only constant folding is applied to the result.
FId fo2_to_modal(const Fo2Ptr& f, Kind kind);

// forall x forall y ((/\_{i<n} p_i(x)<->p_i(y)) -> (p_n(x)<->p_n(y))),
// encoded with the neg/conj/exists core.
Fo2Ptr succinctness_formula(int n);

// ---------------------------------------------------------------------------
// The four-coordinate first-order language for hyper-rectangles: one
// order relation <, tuple predicates P_i, and the tuple predicate
// `exists` that carves out the model's regions.

enum class Fl4Op : uint8_t { less, eqc, pred, exists_p, neg, conj, exists_tuple };

struct Fl4Node;
using Fl4Ptr = std::shared_ptr<const Fl4Node>;

struct Fl4Node {
  Fl4Op op;
  std::string a_var, b_var;        // less/eqc
  std::string pred;                // pred name
  std::vector<std::string> tuple;  // pred/exists_p arguments or bound tuple
  Fl4Ptr a, b;
};

Fl4Ptr fl4_less(const std::string& a, const std::string& b);
Fl4Ptr fl4_eq(const std::string& a, const std::string& b);
Fl4Ptr fl4_pred(const std::string& name, std::vector<std::string> tuple);
Fl4Ptr fl4_exists_pred(std::vector<std::string> tuple);
Fl4Ptr fl4_not(Fl4Ptr a);
Fl4Ptr fl4_and(Fl4Ptr a, Fl4Ptr b);
Fl4Ptr fl4_and_all(const std::vector<Fl4Ptr>& parts);  // empty -> (= t t) is not needed; requires parts
Fl4Ptr fl4_exists(std::vector<std::string> tuple, Fl4Ptr body);

std::string fl4_print(const Fl4Ptr& f);

// The order-theoretic characterization of relation `r` between the boxes
// encoded by the two coordinate tuples (layout lo1,hi1,...,lo_n,hi_n).
Fl4Ptr fl4_rel_formula(Rel8 r, int n, const std::vector<std::string>& s,
                       const std::vector<std::string>& t);

// rect(t): lo_d < hi_d in every dimension.
Fl4Ptr fl4_rect(int n, const std::vector<std::string>& t);

// Sentence-level translation (the forall-closure of the s-translation).
// n = 1 uses 2 coordinates per region, n = 2 uses 4.
Fl4Ptr modal_to_fl4(FId phi, int n);

// A finite box model: named axis-aligned boxes plus a valuation.
struct Fl4Model {
  int n = 1;
  std::vector<std::string> names;
  std::vector<HyperRect> boxes;
  Valuation valuation;
};

Fl4Model fl4_model_from_intervals(const std::vector<std::string>& names,
                                  const std::vector<IntervalUnion>& regions, const Valuation& v);
Fl4Model fl4_model_from_boxes(const std::vector<std::string>& names,
                              const std::vector<HyperRect>& boxes, const Valuation& v);

// Evaluates over the finite coordinate set of all region endpoints;
// sound for translated sentences because every quantifier they contain
// is guarded by `exists`. Unguarded tuple quantifiers fall back to the
// full coordinate grid.
bool eval_fl4(const Fl4Model& model, const Fl4Ptr& sentence);

}  // namespace rcc
