#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rcc/geometry.hpp"
#include "rcc/logic.hpp"
#include "rcc/structures.hpp"

namespace rcc {

// ---------------------------------------------------------------------------
// Domino systems and tilings

struct DominoSystem {
  std::vector<std::string> tiles;
  std::set<std::pair<int, int>> h, v;  // tile-index pairs
  std::optional<int> s0, f0, t0;       // distinguished tiles

  int tile_index(const std::string& name) const;  // -1 when absent
};

struct Tiling {
  bool triangle = true;
  int k = 0;  // triangle: positions with x+y <= k; square: 0 <= x,y < k
  std::map<std::pair<int, int>, int> cells;
};

// Depth-first tiling search with horizontal/vertical propagation, tiles
// tried in index order. The triangle variant additionally pins s0 at
// (0,0) and requires f0 to occur somewhere (when those tiles are set).
std::optional<Tiling> tile_triangle(const DominoSystem& d, int k);
std::optional<Tiling> tile_square(const DominoSystem& d, int k);

// ---------------------------------------------------------------------------
// The position enumeration: anti-diagonals walked from the floor to the
// wall, so that the position above is reached by one step right followed
// by one step forward in the enumeration.

struct GridPos {
  int x = 0, y = 0;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

GridPos lambda(long long i);                // i >= 1
long long lambda_inv(int x, int y);         // inverse
long long lambda_right(long long i);        // index of lambda(i) + (1,0)

// ---------------------------------------------------------------------------
// Reduction formulas (RCC8 alphabet, variables a, b, c, wall, floor, p_<tile>)

FId phi_d(const DominoSystem& d);
FId phi_d_recurring(const DominoSystem& d);  // needs t0
FId phi_d_fin(const DominoSystem& d);        // needs s0 and f0

// Top-level conjunct count of the chi part (diagnostic for tests).
int phi_chi_conjuncts(FId phi);

// ---------------------------------------------------------------------------
// Turing machines and their domino systems

struct TuringMachine {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::string q0, qf;
  std::string blank = "b";
  std::string marker = "#";
  struct Move {
    std::string q, read, q2, write;
    char dir = 'R';  // L or R
  };
  std::vector<Move> delta;
};

// The five normalization checks; empty result means the machine is fit
// for the reduction.
std::vector<std::string> tm_validate(const TuringMachine& m);

// T = Sigma u A u A-dagger u {$}; H and V encode column-to-column and
// cell-above-cell consistency of run snapshots.
DominoSystem tm_to_domino(const TuringMachine& m);  // throws listing violations

// ---------------------------------------------------------------------------
// Models from tilings

struct TilingModel {
  RegionStructure structure;
  Valuation valuation;
  std::string start_region;  // the region for position (0,0)
};

// Builds the finite interval model over the domino-ready witness family,
// truncated to the first m enumeration positions of the tiling domain.
TilingModel model_from_tiling(const DominoSystem& d, const Tiling& t, int m);

// Largest prefix length m such that lambda(1..m) lies inside the domain.
int tiling_prefix_size(const Tiling& t);

// ---------------------------------------------------------------------------
// The domino-ready witness family in R

struct DomreadyWitness {
  std::vector<IntervalUnion> xs;  // x_1 .. x_{2*count}
  std::vector<IntervalUnion> ys;  // y_1 .. y_count
};

DomreadyWitness domready_witness(int count);

// ---------------------------------------------------------------------------
// S5^3: syntax, semantics, and the RCC5 reduction

enum class S5Op : uint8_t { var, neg, conj, dia };

struct S5Node;
using S5Ptr = std::shared_ptr<const S5Node>;

struct S5Node {
  S5Op op;
  int axis = 0;  // 1..3 for dia
  std::string name;
  S5Ptr a, b;
};

S5Ptr s5_var(const std::string& name);
S5Ptr s5_not(S5Ptr a);
S5Ptr s5_and(S5Ptr a, S5Ptr b);
S5Ptr s5_dia(int axis, S5Ptr a);
S5Ptr s5_parse(const std::string& text);  // grammar like the modal one, with <1>/<2>/<3>
std::string s5_print(const S5Ptr& f);

struct S53Model {
  int n1 = 1, n2 = 1, n3 = 1;
  std::map<std::string, std::set<std::array<int, 3>>> valuation;
};

bool s53_check(const S53Model& m, std::array<int, 3> world, const S5Ptr& f);

FId sharp_translate(const S5Ptr& f);  // RCC5 formula over a_i, d, d_ij, p...
// The five numbered constraint groups of the reduction, and their
// conjunction.
std::vector<FId> chi_rcc5_groups();
FId chi_rcc5();
FId s53_reduction(const S5Ptr& f);  // box_u chi ∧ d ∧ sharp

struct S53ModelOut {
  RegionStructure structure;  // RCC5 powerset structure over the atoms
  Valuation valuation;
};

S53ModelOut model_from_s53(const S53Model& m);
std::string s53_triple_region(const S53Model& m, std::array<int, 3> world);

}  // namespace rcc
