#include "padicpose/candidate.hpp"

#include "padicpose/errors.hpp"
#include "padicpose/padic.hpp"

namespace padicpose {

std::vector<std::uint64_t> canonicalize_vector(const std::vector<std::uint64_t>& v, int prec) {
  const std::uint64_t mask = mask_bits(prec);
  int best = -1, best_val = kValInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int val = val_bits(v[i] & mask);
    if (val < best_val) {
      best_val = val;
      best = static_cast<int>(i);
    }
  }
  if (best < 0) throw ZeroMatrix("cannot canonicalize the zero matrix");
  const std::uint64_t inv = inv_odd64((v[best] & mask) >> best_val);
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] * inv) & mask;
  return out;
}

CandidateEssential canonicalize(const Mat3& m, int prec) {
  CandidateEssential c;
  c.prec = prec;
  c.entries = mat_mask(m, prec);
  const auto canon = canonicalize_vector(std::vector<std::uint64_t>(m.begin(), m.end()), prec);
  std::copy(canon.begin(), canon.end(), c.canonical.begin());
  c.pivot_valuation = kValInf;
  for (int i = 0; i < 9; ++i) {
    const int val = val_bits(c.entries[i]);
    if (val < c.pivot_valuation) {
      c.pivot_valuation = val;
      c.pivot_index = i;
    }
  }
  return c;
}

}  // namespace padicpose
