#pragma once

#include "padicpose/modmat.hpp"

#include <cstdint>
#include <vector>

namespace padicpose {

// Projective essential-matrix candidate with its form normalized under unit scaling.
struct CandidateEssential {
  int prec = 0;
  Mat3 entries{};
  Mat3 canonical{};
  int pivot_index = 0;
  int pivot_valuation = 0;
  int sample_id = -1;
};

// Scales by the inverse unit part of the first entry of minimal valuation.
CandidateEssential canonicalize(const Mat3& m, int prec);
std::vector<std::uint64_t> canonicalize_vector(const std::vector<std::uint64_t>& v, int prec);

}  // namespace padicpose
