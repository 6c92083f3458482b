#pragma once

#include "padicpose/modmat.hpp"

#include <array>
#include <cstddef>
#include <cstdint>

// Batched inner loops with a scalar reference and an AVX2 variant chosen at runtime.
namespace padicpose::kernels {

enum class Isa { Scalar, Avx2 };

// AVX2 when the CPU has it and PADICPOSE_FORCE_SCALAR is unset.
Isa active_isa();
bool isa_available(Isa isa);
// Overrides the runtime choice; used by equivalence tests and benchmarks.
void set_isa(Isa isa);
const char* isa_name(Isa isa);

// Chart points y (SoA, n entries per coordinate) expand to x with x[chart] = 1 and
// the other three coordinates taken from y in order. out[i] = 1 iff the nine
// entries of 2EE^TE - Tr(EE^T)E and det E all vanish mod 2^k at E = sum x_t B_t.
void essential_zero_mask(const std::array<Mat3, 4>& basis, int chart, const std::uint64_t* y0,
                         const std::uint64_t* y1, const std::uint64_t* y2, std::size_t n, int k,
                         std::uint8_t* out);

// out[j] = number of low bits on which point j agrees with query in every
// coordinate, capped at m. coords is dim x n row-major (coordinate-major).
void agreement_depths(const std::uint64_t* coords, int dim, std::size_t n, const std::uint64_t* query,
                      int m, std::uint8_t* out);

namespace scalar {
void essential_zero_mask(const std::array<Mat3, 4>& basis, int chart, const std::uint64_t* y0,
                         const std::uint64_t* y1, const std::uint64_t* y2, std::size_t n, int k,
                         std::uint8_t* out);
void agreement_depths(const std::uint64_t* coords, int dim, std::size_t n, const std::uint64_t* query,
                      int m, std::uint8_t* out);
}  // namespace scalar

namespace avx2 {
void essential_zero_mask(const std::array<Mat3, 4>& basis, int chart, const std::uint64_t* y0,
                         const std::uint64_t* y1, const std::uint64_t* y2, std::size_t n, int k,
                         std::uint8_t* out);
void agreement_depths(const std::uint64_t* coords, int dim, std::size_t n, const std::uint64_t* query,
                      int m, std::uint8_t* out);
}  // namespace avx2

}  // namespace padicpose::kernels
