#include "rcc/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcc {

// ---------------------------------------------------------------------------
// IntervalUnion

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) {
  if (pieces.empty()) throw std::invalid_argument("interval union must be non-empty");
  for (const auto& p : pieces)
    if (!(p.lo < p.hi)) throw std::invalid_argument("degenerate interval piece");
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  // merge overlapping or touching pieces: [0,1] u [1,2] = [0,2]
  for (const auto& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi) {
      if (p.hi > pieces_.back().hi) pieces_.back().hi = p.hi;
    } else {
      pieces_.push_back(p);
    }
  }
}

bool intersects(const IntervalUnion& s, const IntervalUnion& t) {
  for (const auto& a : s.pieces())
    for (const auto& b : t.pieces())
      if (std::max(a.lo, b.lo) <= std::min(a.hi, b.hi)) return true;
  return false;
}

bool interiors_meet(const IntervalUnion& s, const IntervalUnion& t) {
  for (const auto& a : s.pieces())
    for (const auto& b : t.pieces())
      if (std::max(a.lo, b.lo) < std::min(a.hi, b.hi)) return true;
  return false;
}

bool subset(const IntervalUnion& s, const IntervalUnion& t) {
  // pieces of t are separated, so each piece of s must fit inside one of them
  for (const auto& a : s.pieces()) {
    bool covered = false;
    for (const auto& b : t.pieces())
      if (b.lo <= a.lo && a.hi <= b.hi) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

bool subset_interior(const IntervalUnion& s, const IntervalUnion& t) {
  for (const auto& a : s.pieces()) {
    bool covered = false;
    for (const auto& b : t.pieces())
      if (b.lo < a.lo && a.hi < b.hi) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

namespace {

// Shared case analysis over the exact predicates of the relation
// definitions; the predicates must already incorporate the geometry.
template <typename Region, typename Pred>
Rel8 classify(const Region& s, const Region& t, const Pred& p) {
  if (p.equal(s, t)) return Rel8::eq;
  if (!p.intersects(s, t)) return Rel8::dc;
  if (!p.interiors_meet(s, t)) return Rel8::ec;
  if (p.subset(s, t)) return p.subset_interior(s, t) ? Rel8::ntpp : Rel8::tpp;
  if (p.subset(t, s)) return p.subset_interior(t, s) ? Rel8::ntppi : Rel8::tppi;
  return Rel8::po;
}

struct IntervalPreds {
  bool equal(const IntervalUnion& a, const IntervalUnion& b) const { return a == b; }
  bool intersects(const IntervalUnion& a, const IntervalUnion& b) const { return rcc::intersects(a, b); }
  bool interiors_meet(const IntervalUnion& a, const IntervalUnion& b) const { return rcc::interiors_meet(a, b); }
  bool subset(const IntervalUnion& a, const IntervalUnion& b) const { return rcc::subset(a, b); }
  bool subset_interior(const IntervalUnion& a, const IntervalUnion& b) const { return rcc::subset_interior(a, b); }
};

}  // namespace

Rel8 rel_intervals(const IntervalUnion& s, const IntervalUnion& t) {
  return classify(s, t, IntervalPreds{});
}

Rel5 rel5_intervals(const IntervalUnion& s, const IntervalUnion& t) {
  return coarsen(rel_intervals(s, t));
}

// ---------------------------------------------------------------------------
// HyperRect

HyperRect::HyperRect(std::vector<Interval> d) : dims(std::move(d)) {
  if (dims.empty()) throw std::invalid_argument("hyper-rectangle needs at least one dimension");
  for (const auto& iv : dims)
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("singleton interval in hyper-rectangle");
}

namespace {

struct RectPreds {
  bool equal(const HyperRect& a, const HyperRect& b) const { return a.dims == b.dims; }
  bool intersects(const HyperRect& a, const HyperRect& b) const {
    for (size_t i = 0; i < a.dims.size(); ++i)
      if (std::max(a.dims[i].lo, b.dims[i].lo) > std::min(a.dims[i].hi, b.dims[i].hi)) return false;
    return true;
  }
  bool interiors_meet(const HyperRect& a, const HyperRect& b) const {
    for (size_t i = 0; i < a.dims.size(); ++i)
      if (std::max(a.dims[i].lo, b.dims[i].lo) >= std::min(a.dims[i].hi, b.dims[i].hi)) return false;
    return true;
  }
  bool subset(const HyperRect& a, const HyperRect& b) const {
    for (size_t i = 0; i < a.dims.size(); ++i)
      if (b.dims[i].lo > a.dims[i].lo || a.dims[i].hi > b.dims[i].hi) return false;
    return true;
  }
  bool subset_interior(const HyperRect& a, const HyperRect& b) const {
    for (size_t i = 0; i < a.dims.size(); ++i)
      if (b.dims[i].lo >= a.dims[i].lo || a.dims[i].hi >= b.dims[i].hi) return false;
    return true;
  }
};

}  // namespace

Rel8 rel_rects(const HyperRect& s, const HyperRect& t) {
  if (s.dims.size() != t.dims.size())
    throw std::invalid_argument("rel_rects: dimension mismatch");
  return classify(s, t, RectPreds{});
}

Rel5 rel5_rects(const HyperRect& s, const HyperRect& t) { return coarsen(rel_rects(s, t)); }

// ---------------------------------------------------------------------------
// Fork frames

ForkFrame::ForkFrame(int f) : fork_count(f) {
  if (f < 1) throw std::invalid_argument("fork frame needs at least one fork");
}

bool ForkPointSet::empty() const {
  for (uint8_t m : masks)
    if (m) return false;
  return true;
}

// I_R X = { x | forall y (x R y -> y in X) } with R the reflexive closure
// of b -> l, b -> r on each fork.
ForkPointSet alexandrov_interior(const ForkFrame& frame, const ForkPointSet& x) {
  ForkPointSet out(frame.fork_count);
  for (int i = 0; i < frame.fork_count; ++i) {
    uint8_t m = x.masks[size_t(i)];
    uint8_t r = 0;
    if (m & ForkPointSet::kL) r |= ForkPointSet::kL;
    if (m & ForkPointSet::kR) r |= ForkPointSet::kR;
    if ((m & (ForkPointSet::kB | ForkPointSet::kL | ForkPointSet::kR)) ==
        (ForkPointSet::kB | ForkPointSet::kL | ForkPointSet::kR))
      r |= ForkPointSet::kB;
    out.masks[size_t(i)] = r;
  }
  return out;
}

// C_R X = { x | exists y (x R y and y in X) }.
ForkPointSet alexandrov_closure(const ForkFrame& frame, const ForkPointSet& x) {
  ForkPointSet out(frame.fork_count);
  for (int i = 0; i < frame.fork_count; ++i) {
    uint8_t m = x.masks[size_t(i)];
    uint8_t r = 0;
    if (m & ForkPointSet::kL) r |= ForkPointSet::kL;
    if (m & ForkPointSet::kR) r |= ForkPointSet::kR;
    if (m) r |= ForkPointSet::kB;
    out.masks[size_t(i)] = r;
  }
  return out;
}

bool is_regular_closed(const ForkFrame& frame, const ForkPointSet& x) {
  return alexandrov_closure(frame, alexandrov_interior(frame, x)) == x;
}

ForkPointSet intersect(const ForkPointSet& a, const ForkPointSet& b) {
  ForkPointSet out(int(a.masks.size()));
  for (size_t i = 0; i < a.masks.size(); ++i) out.masks[i] = a.masks[i] & b.masks[i];
  return out;
}

bool subset(const ForkPointSet& a, const ForkPointSet& b) {
  for (size_t i = 0; i < a.masks.size(); ++i)
    if (a.masks[i] & ~b.masks[i]) return false;
  return true;
}

namespace {
constexpr const char* kShapeNames[4] = {"empty", "left", "right", "both"};
}

const char* name(ForkShape s) { return kShapeNames[int(s)]; }

ForkShape parse_fork_shape(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == kShapeNames[i]) return ForkShape(i);
  throw std::invalid_argument("unknown fork shape: " + s);
}

ForkRegion::ForkRegion(const ForkFrame& frame, std::map<int, ForkShape> shapes)
    : shapes_(size_t(frame.fork_count), ForkShape::empty) {
  bool nonempty = false;
  for (const auto& [fork, shape] : shapes) {
    if (fork < 1 || fork > frame.fork_count)
      throw std::invalid_argument("fork index out of range");
    shapes_[size_t(fork - 1)] = shape;
    if (shape != ForkShape::empty) nonempty = true;
  }
  if (!nonempty) throw std::invalid_argument("fork region must be non-empty");
}

ForkPointSet ForkRegion::points() const {
  ForkPointSet out(int(shapes_.size()));
  for (size_t i = 0; i < shapes_.size(); ++i) {
    switch (shapes_[i]) {
      case ForkShape::empty: break;
      case ForkShape::left: out.masks[i] = ForkPointSet::kB | ForkPointSet::kL; break;
      case ForkShape::right: out.masks[i] = ForkPointSet::kB | ForkPointSet::kR; break;
      case ForkShape::both:
        out.masks[i] = ForkPointSet::kB | ForkPointSet::kL | ForkPointSet::kR;
        break;
    }
  }
  return out;
}

namespace {

struct ForkPreds {
  const ForkFrame& frame;
  bool equal(const ForkRegion& a, const ForkRegion& b) const { return a.shapes() == b.shapes(); }
  bool intersects(const ForkRegion& a, const ForkRegion& b) const {
    return !rcc::intersect(a.points(), b.points()).empty();
  }
  bool interiors_meet(const ForkRegion& a, const ForkRegion& b) const {
    return !rcc::intersect(alexandrov_interior(frame, a.points()),
                           alexandrov_interior(frame, b.points()))
                .empty();
  }
  bool subset(const ForkRegion& a, const ForkRegion& b) const {
    return rcc::subset(a.points(), b.points());
  }
  bool subset_interior(const ForkRegion& a, const ForkRegion& b) const {
    return rcc::subset(a.points(), alexandrov_interior(frame, b.points()));
  }
};

}  // namespace

Rel8 rel_fork(const ForkFrame& frame, const ForkRegion& s, const ForkRegion& t) {
  if (s.fork_count() != frame.fork_count || t.fork_count() != frame.fork_count)
    throw std::invalid_argument("rel_fork: frame mismatch");
  return classify(s, t, ForkPreds{frame});
}

Rel5 rel5_fork(const ForkFrame& frame, const ForkRegion& s, const ForkRegion& t) {
  return coarsen(rel_fork(frame, s, t));
}

}  // namespace rcc
