#include "padicpose/kernels.hpp"

#include "padicpose/padic.hpp"

namespace padicpose::kernels::scalar {

void essential_zero_mask(const std::array<Mat3, 4>& basis, int chart, const std::uint64_t* y0,
                         const std::uint64_t* y1, const std::uint64_t* y2, std::size_t n, int k,
                         std::uint8_t* out) {
  const std::uint64_t mask = mask_bits(k);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t x[4];
    const std::uint64_t y[3] = {y0[i], y1[i], y2[i]};
    for (int t = 0, s = 0; t < 4; ++t) x[t] = t == chart ? 1 : y[s++];

    std::uint64_t e[9];
    for (int q = 0; q < 9; ++q)
      e[q] = basis[0][q] * x[0] + basis[1][q] * x[1] + basis[2][q] * x[2] + basis[3][q] * x[3];

    std::uint64_t g[9];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        g[3 * r + c] = e[3 * r] * e[3 * c] + e[3 * r + 1] * e[3 * c + 1] + e[3 * r + 2] * e[3 * c + 2];
    const std::uint64_t tr = g[0] + g[4] + g[8];

    std::uint64_t acc = 0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const std::uint64_t p = g[3 * r] * e[c] + g[3 * r + 1] * e[3 + c] + g[3 * r + 2] * e[6 + c];
        acc |= 2 * p - tr * e[3 * r + c];
      }
    acc |= e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
           e[2] * (e[3] * e[7] - e[4] * e[6]);
    out[i] = (acc & mask) == 0;
  }
}

void agreement_depths(const std::uint64_t* coords, int dim, std::size_t n, const std::uint64_t* query,
                      int m, std::uint8_t* out) {
  const std::uint64_t cap = m >= 64 ? 0 : std::uint64_t{1} << m;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t acc = cap;
    for (int i = 0; i < dim; ++i) acc |= coords[i * n + j] ^ query[i];
    out[j] = static_cast<std::uint8_t>(acc == 0 ? 64 : __builtin_ctzll(acc));
  }
}

}  // namespace padicpose::kernels::scalar
