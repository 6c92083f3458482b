#pragma once

#include "padicpose/mpoly.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace padicpose {

using Row9 = std::array<std::uint64_t, 9>;

// Nullspace basis of a rank-5 5x9 system in staircase form: basis vector t is 1 at
// free_columns[t] and 0 at the other free columns.
struct StaircaseBasis {
  int prec = 0;
  std::array<Row9, 4> vectors{};
  std::array<int, 5> pivot_columns{};
  std::array<int, 4> free_columns{};
};

// Gaussian elimination with odd pivots. Throws RankDeficient if rank mod 2 < 5.
StaircaseBasis nullspace_staircase(const std::array<Row9, 5>& m, int prec);

struct NewtonLift {
  std::vector<std::uint64_t> point;      // residues mod 2^target
  std::array<std::size_t, 3> subsystem{};  // indices into the input system
  int steps = 0;
  std::vector<int> residual_valuations;  // before step 1, then after each step
};

// Picks the first 3-subset (lowest degree first, then index) with a Jacobian
// invertible mod 2 at x0 and runs Newton to precision target_m.
NewtonLift newton_lift(const std::vector<MPoly>& f, const std::vector<std::uint8_t>& x0, int target_m);

}  // namespace padicpose
