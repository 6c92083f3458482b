#include "padicpose/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace padicpose::kernels {

namespace {

Isa detect() {
  if (std::getenv("PADICPOSE_FORCE_SCALAR")) return Isa::Scalar;
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) { current().store(isa_available(isa) ? isa : Isa::Scalar); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void essential_zero_mask(const std::array<Mat3, 4>& basis, int chart, const std::uint64_t* y0,
                         const std::uint64_t* y1, const std::uint64_t* y2, std::size_t n, int k,
                         std::uint8_t* out) {
  if (active_isa() == Isa::Avx2 && k <= 32)
    avx2::essential_zero_mask(basis, chart, y0, y1, y2, n, k, out);
  else
    scalar::essential_zero_mask(basis, chart, y0, y1, y2, n, k, out);
}

void agreement_depths(const std::uint64_t* coords, int dim, std::size_t n, const std::uint64_t* query,
                      int m, std::uint8_t* out) {
  if (active_isa() == Isa::Avx2)
    avx2::agreement_depths(coords, dim, n, query, m, out);
  else
    scalar::agreement_depths(coords, dim, n, query, m, out);
}

}  // namespace padicpose::kernels
