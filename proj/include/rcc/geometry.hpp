#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rcc/algebra.hpp"
#include "rcc/rational.hpp"

namespace rcc {

// ---------------------------------------------------------------------------
// Interval unions in R

struct Interval {
  Rational lo, hi;  // lo < hi; closed on both ends
  friend bool operator==(const Interval&, const Interval&) = default;
};

// A finite union of closed rational intervals, kept normalized: sorted,
// pairwise disjoint with gaps between consecutive pieces, every piece
// non-degenerate. Such a set is regular closed and non-empty.
class IntervalUnion {
 public:
  // Normalizes: sorts and merges overlapping or touching pieces.
  // Throws std::invalid_argument on an empty list or a degenerate piece.
  explicit IntervalUnion(std::vector<Interval> pieces);
  IntervalUnion(Rational lo, Rational hi) : IntervalUnion(std::vector<Interval>{{lo, hi}}) {}

  const std::vector<Interval>& pieces() const { return pieces_; }
  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> pieces_;
};

bool intersects(const IntervalUnion& s, const IntervalUnion& t);          // s ∩ t ≠ ∅
bool interiors_meet(const IntervalUnion& s, const IntervalUnion& t);      // I(s) ∩ I(t) ≠ ∅
bool subset(const IntervalUnion& s, const IntervalUnion& t);              // s ⊆ t
bool subset_interior(const IntervalUnion& s, const IntervalUnion& t);     // s ⊆ I(t)

Rel8 rel_intervals(const IntervalUnion& s, const IntervalUnion& t);
Rel5 rel5_intervals(const IntervalUnion& s, const IntervalUnion& t);

// ---------------------------------------------------------------------------
// Hyper-rectangles in R^n

// Axis-aligned product of non-singleton closed intervals.
struct HyperRect {
  std::vector<Interval> dims;  // size >= 1, lo < hi in every dimension
  explicit HyperRect(std::vector<Interval> d);
  friend bool operator==(const HyperRect&, const HyperRect&) = default;
};

Rel8 rel_rects(const HyperRect& s, const HyperRect& t);  // throws on dimension mismatch
Rel5 rel5_rects(const HyperRect& s, const HyperRect& t);

// ---------------------------------------------------------------------------
// Fork frames and their Alexandrov topology

// Disjoint union of forks; fork i has points {b_i, l_i, r_i} with b_i
// below both leaves in the inducing partial order.
struct ForkFrame {
  int fork_count = 0;  // forks indexed 1..fork_count
  explicit ForkFrame(int f);
  friend bool operator==(const ForkFrame&, const ForkFrame&) = default;
};

// A subset of a fork frame's points: per fork a 3-bit mask.
struct ForkPointSet {
  static constexpr uint8_t kB = 1, kL = 2, kR = 4;
  std::vector<uint8_t> masks;  // size = fork_count

  explicit ForkPointSet(int fork_count) : masks(size_t(fork_count), 0) {}
  bool empty() const;
  friend bool operator==(const ForkPointSet&, const ForkPointSet&) = default;
};

ForkPointSet alexandrov_interior(const ForkFrame& frame, const ForkPointSet& x);
ForkPointSet alexandrov_closure(const ForkFrame& frame, const ForkPointSet& x);
bool is_regular_closed(const ForkFrame& frame, const ForkPointSet& x);

ForkPointSet intersect(const ForkPointSet& a, const ForkPointSet& b);
bool subset(const ForkPointSet& a, const ForkPointSet& b);

// The non-empty regular closed subsets of one fork.
enum class ForkShape : uint8_t { empty = 0, left, right, both };

const char* name(ForkShape s);
ForkShape parse_fork_shape(const std::string& s);

// A regular closed region in a fork frame, encoded by per-fork shapes so
// regular closedness holds by construction. At least one fork non-empty.
class ForkRegion {
 public:
  ForkRegion(const ForkFrame& frame, std::map<int, ForkShape> shapes);

  const std::vector<ForkShape>& shapes() const { return shapes_; }  // index 0 = fork 1
  ForkShape shape(int fork) const { return shapes_[size_t(fork - 1)]; }
  int fork_count() const { return int(shapes_.size()); }
  ForkPointSet points() const;
  friend bool operator==(const ForkRegion&, const ForkRegion&) = default;

 private:
  std::vector<ForkShape> shapes_;
};

Rel8 rel_fork(const ForkFrame& frame, const ForkRegion& s, const ForkRegion& t);
Rel5 rel5_fork(const ForkFrame& frame, const ForkRegion& s, const ForkRegion& t);

}  // namespace rcc
