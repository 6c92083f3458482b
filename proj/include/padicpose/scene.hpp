#pragma once

#include "padicpose/modmat.hpp"
#include "padicpose/relpose.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace padicpose {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Uniform integer in [0, n) by rejection, independent of the standard library's distributions.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

// R = (I - S)(I + S)^-1 for an even skew-symmetric S.
Mat3 cayley_rotation(const Mat3& s, int prec);
Mat3 random_even_skew(Rng& rng, int prec);
// [t]_x R.
Mat3 make_essential(const Vec3& t, const Mat3& r, int prec);

struct GeneratedPair {
  PointPair pair;
  int effective_prec = 0;
};

// u = (a, b, 1); the first unit coordinate of u^T E is solved for exactly.
// grid_bits > 0 draws a and b as grid-encoded pixels of that resolution.
GeneratedPair sample_correspondence(const Mat3& e, Rng& rng, int prec, int grid_bits = 0);

struct Scene {
  int prec = 0;
  Vec3 translation{};
  Mat3 rotation{};
  Mat3 essential{};
  std::vector<PointPair> pairs;
  std::vector<bool> inlier;
};

Scene simulate_scene(int points, double outlier_frac, int prec, int grid_bits, std::uint64_t seed);

}  // namespace padicpose
