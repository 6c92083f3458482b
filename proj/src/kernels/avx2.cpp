#include "padicpose/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define PADICPOSE_AVX2 __attribute__((target("avx2")))
#endif

namespace padicpose::kernels::avx2 {

#ifdef PADICPOSE_AVX2

namespace {

// Low 32 bits of eight consecutive u64 values.
PADICPOSE_AVX2 inline __m256i load_lo32(const std::uint64_t* p) {
  const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  __m256i a = _mm256_permutevar8x32_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)), idx);
  __m256i b = _mm256_permutevar8x32_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + 4)), idx);
  return _mm256_permute2x128_si256(a, b, 0x20);
}

PADICPOSE_AVX2 inline __m256i mul(__m256i a, __m256i b) { return _mm256_mullo_epi32(a, b); }
PADICPOSE_AVX2 inline __m256i add(__m256i a, __m256i b) { return _mm256_add_epi32(a, b); }
PADICPOSE_AVX2 inline __m256i sub(__m256i a, __m256i b) { return _mm256_sub_epi32(a, b); }

}  // namespace

PADICPOSE_AVX2 void essential_zero_mask(const std::array<Mat3, 4>& basis, int chart, const std::uint64_t* y0,
                                        const std::uint64_t* y1, const std::uint64_t* y2, std::size_t n,
                                        int k, std::uint8_t* out) {
  __m256i b[4][9];
  for (int t = 0; t < 4; ++t)
    for (int q = 0; q < 9; ++q) b[t][q] = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(basis[t][q])));
  const __m256i mask = _mm256_set1_epi32(k >= 32 ? -1 : static_cast<int>((1u << k) - 1));
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i zero = _mm256_setzero_si256();

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i y[3] = {load_lo32(y0 + i), load_lo32(y1 + i), load_lo32(y2 + i)};
    __m256i x[4];
    for (int t = 0, s = 0; t < 4; ++t) x[t] = t == chart ? one : y[s++];

    __m256i e[9];
    for (int q = 0; q < 9; ++q)
      e[q] = add(add(mul(b[0][q], x[0]), mul(b[1][q], x[1])), add(mul(b[2][q], x[2]), mul(b[3][q], x[3])));

    __m256i g[9];
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) {
        g[3 * r + c] = add(add(mul(e[3 * r], e[3 * c]), mul(e[3 * r + 1], e[3 * c + 1])), mul(e[3 * r + 2], e[3 * c + 2]));
        g[3 * c + r] = g[3 * r + c];
      }
    const __m256i tr = add(add(g[0], g[4]), g[8]);

    __m256i acc = zero;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const __m256i p = add(add(mul(g[3 * r], e[c]), mul(g[3 * r + 1], e[3 + c])), mul(g[3 * r + 2], e[6 + c]));
        acc = _mm256_or_si256(acc, sub(add(p, p), mul(tr, e[3 * r + c])));
      }
    const __m256i det = add(sub(mul(e[0], sub(mul(e[4], e[8]), mul(e[5], e[7]))),
                                mul(e[1], sub(mul(e[3], e[8]), mul(e[5], e[6])))),
                            mul(e[2], sub(mul(e[3], e[7]), mul(e[4], e[6]))));
    acc = _mm256_and_si256(_mm256_or_si256(acc, det), mask);
    const int bits = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(acc, zero)));
    for (int l = 0; l < 8; ++l) out[i + l] = (bits >> l) & 1;
  }
  if (i < n) scalar::essential_zero_mask(basis, chart, y0 + i, y1 + i, y2 + i, n - i, k, out + i);
}

PADICPOSE_AVX2 void agreement_depths(const std::uint64_t* coords, int dim, std::size_t n,
                                     const std::uint64_t* query, int m, std::uint8_t* out) {
  const long long cap = m >= 64 ? 0 : static_cast<long long>(std::uint64_t{1} << m);
  std::size_t j = 0;
  alignas(32) std::uint64_t lanes[4];
  for (; j + 4 <= n; j += 4) {
    __m256i acc = _mm256_set1_epi64x(cap);
    for (int i = 0; i < dim; ++i) {
      const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(coords + i * n + j));
      acc = _mm256_or_si256(acc, _mm256_xor_si256(c, _mm256_set1_epi64x(static_cast<long long>(query[i]))));
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (int l = 0; l < 4; ++l)
      out[j + l] = static_cast<std::uint8_t>(lanes[l] == 0 ? 64 : __builtin_ctzll(lanes[l]));
  }
  if (j < n) {
    // The tail reads a strided slice, so gather it into a contiguous block first.
    const std::size_t rest = n - j;
    std::uint64_t tail[64 * 4];
    for (int i = 0; i < dim; ++i)
      for (std::size_t q = 0; q < rest; ++q) tail[i * rest + q] = coords[i * n + j + q];
    scalar::agreement_depths(tail, dim, rest, query, m, out + j);
  }
}

#else

void essential_zero_mask(const std::array<Mat3, 4>& basis, int chart, const std::uint64_t* y0,
                         const std::uint64_t* y1, const std::uint64_t* y2, std::size_t n, int k,
                         std::uint8_t* out) {
  scalar::essential_zero_mask(basis, chart, y0, y1, y2, n, k, out);
}

void agreement_depths(const std::uint64_t* coords, int dim, std::size_t n, const std::uint64_t* query,
                      int m, std::uint8_t* out) {
  scalar::agreement_depths(coords, dim, n, query, m, out);
}

#endif

}  // namespace padicpose::kernels::avx2
