#include "padicpose/scene.hpp"

#include "padicpose/errors.hpp"
#include "padicpose/padic.hpp"

#include <cmath>
#include <numeric>

namespace padicpose {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t r = rng();
    if (r < limit) return r % n;
  }
}

Mat3 cayley_rotation(const Mat3& s, int prec) {
  const Mat3 sm = mat_mask(s, prec);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (((sm[3 * i + j] + sm[3 * j + i]) & mask_bits(prec)) != 0) throw NotSkew("S^T != -S");
  for (auto v : sm)
    if (v & 1) throw NotEven("S has an odd entry");
  const Mat3 id = mat_identity();
  return mat_mul(mat_sub(id, sm, prec), mat_inverse(mat_add(id, sm, prec), prec), prec);
}

Mat3 random_even_skew(Rng& rng, int prec) {
  const std::uint64_t a = 2 * rng(), b = 2 * rng(), c = 2 * rng();
  return mat_mask({0, a, b, 0 - a, 0, c, 0 - b, 0 - c, 0}, prec);
}

Mat3 make_essential(const Vec3& t, const Mat3& r, int prec) {
  if (((t[0] | t[1] | t[2]) & 1) == 0) throw ZeroTranslation("translation vanishes mod 2");
  return mat_mul(cross_matrix(t, prec), r, prec);
}

GeneratedPair sample_correspondence(const Mat3& e, Rng& rng, int prec, int grid_bits) {
  const std::uint64_t mask = mask_bits(prec);
  auto coord = [&]() -> std::uint64_t {
    if (grid_bits <= 0) return rng() & mask;
    return grid_encode({uniform_below(rng, std::uint64_t{1} << grid_bits), grid_bits}).residue();
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vec3 u = {coord(), coord(), 1};
    Vec3 l{};
    for (int k = 0; k < 3; ++k) l[k] = (u[0] * e[k] + u[1] * e[3 + k] + u[2] * e[6 + k]) & mask;
    int p = -1;
    for (int k = 0; k < 3 && p < 0; ++k)
      if (l[k] & 1) p = k;
    if (p < 0) continue;
    Vec3 v{};
    if (p == 2) {
      v[0] = rng() & mask;
      v[1] = rng() & mask;
    } else {
      v[2] = 1;
      v[1 - p] = rng() & mask;
    }
    std::uint64_t rest = 0;
    for (int k = 0; k < 3; ++k)
      if (k != p) rest += l[k] * v[k];
    v[p] = ((0 - rest) * inv_odd64(l[p])) & mask;
    if (((v[0] | v[1] | v[2]) & 1) == 0) continue;
    return {{u, v}, prec};
  }
  throw DegenerateEpipolarLine("no unit epipolar coordinate after 64 draws");
}

Scene simulate_scene(int points, double outlier_frac, int prec, int grid_bits, std::uint64_t seed) {
  if (points < 0) throw std::invalid_argument("negative point count");
  if (outlier_frac < 0 || outlier_frac > 1) throw std::invalid_argument("outlier fraction must lie in [0, 1]");
  Rng rng(splitmix64(seed));
  Scene s;
  s.prec = prec;
  s.rotation = cayley_rotation(random_even_skew(rng, prec), prec);
  do {
    s.translation = {rng() & mask_bits(prec), rng() & mask_bits(prec), rng() & mask_bits(prec)};
  } while (((s.translation[0] | s.translation[1] | s.translation[2]) & 1) == 0);
  s.essential = make_essential(s.translation, s.rotation, prec);
  for (int i = 0; i < points; ++i) s.pairs.push_back(sample_correspondence(s.essential, rng, prec, grid_bits).pair);
  s.inlier.assign(points, true);

  const int outliers = static_cast<int>(std::lround(outlier_frac * points));
  std::vector<int> idx(points);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < outliers; ++i) {
    const int j = i + static_cast<int>(uniform_below(rng, points - i));
    std::swap(idx[i], idx[j]);
    const int o = idx[i];
    s.pairs[o].v = {rng() & mask_bits(prec), rng() & mask_bits(prec), 1};
    s.inlier[o] = false;
  }
  return s;
}

}  // namespace padicpose
