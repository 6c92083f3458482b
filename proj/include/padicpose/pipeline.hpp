#pragma once

#include "padicpose/candidate.hpp"
#include "padicpose/relpose.hpp"
#include "padicpose/ultraclust.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace padicpose {

struct RunConfig {
  int m = 16;  // candidate precision
  int n = 0;   // grid resolution of pixel input, 0 when not used
  int samples = 50;
  int k = 12;
  std::uint64_t seed = 1;
  double tie_tol = 0.05;
  int max_resamples = 200;
  int threads = 0;  // 0 picks the hardware concurrency
  LiftOptions lift;
};

struct CorrespondenceSet {
  int prec = 0;
  std::vector<PointPair> pairs;
  std::optional<Mat3> ground_truth;
};

struct PixelPair {
  GridCoord x, y, x2, y2;
};
CorrespondenceSet encode_correspondences(const std::vector<PixelPair>& pixels, int n);

struct SlotDiagnostics {
  int slot = 0;
  int attempts = 0;
  bool failed = false;
  std::array<int, 5> sample{};
  int candidates = 0;
  std::map<std::string, int> resamples;  // failing step -> count
};

// A candidate of the accumulated set with its vote key.
struct PooledCandidate {
  CandidateEssential candidate;
  int slot = 0;
  std::uint64_t group = 0;  // digest of the canonical form at half precision
};

struct RankedResult {
  RunConfig config;
  std::vector<SlotDiagnostics> slots;
  std::vector<PooledCandidate> pool;
  ValidityResult validity;
  std::vector<ClusterReport> ranked;
  std::vector<Mat3> winner_centres;  // canonical forms of the winning cluster's centre set
  std::optional<int> agreement_depth;
  std::vector<int> ground_truth_depths;  // per pooled candidate, when ground truth is known
};

// Solutions sharing a slot and agreeing to ceil(m/2) digits cast one vote.
int count_votes(const std::vector<PooledCandidate>& pool, const Dendrogram& d, int node);

// Classification of a candidate pool: ideal clustering, ranked reports, winner.
void classify_pool(RankedResult& result);

RankedResult run_ransacp(const CorrespondenceSet& x, const RunConfig& cfg);

UnramifiedElement encode_matrix(const Mat3& m, int prec);
Mat3 decode_matrix(const UnramifiedElement& x);

}  // namespace padicpose
