#include "padicpose/pipeline.hpp"

#include "padicpose/errors.hpp"
#include "padicpose/kernels.hpp"
#include "padicpose/scene.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace padicpose {

CorrespondenceSet encode_correspondences(const std::vector<PixelPair>& pixels, int n) {
  CorrespondenceSet s;
  s.prec = n;
  for (const auto& p : pixels) {
    for (const GridCoord* c : {&p.x, &p.y, &p.x2, &p.y2})
      if (c->resolution != n) throw OutOfRange("pixel resolution differs from n");
    PointPair pp;
    pp.u = {grid_encode(p.x).residue(), grid_encode(p.y).residue(), 1};
    pp.v = {grid_encode(p.x2).residue(), grid_encode(p.y2).residue(), 1};
    s.pairs.push_back(pp);
  }
  return s;
}

UnramifiedElement encode_matrix(const Mat3& m, int prec) {
  return encode_residues(std::vector<std::uint64_t>(m.begin(), m.end()), prec);
}

Mat3 decode_matrix(const UnramifiedElement& x) {
  const auto v = decode_vector(x);
  Mat3 m{};
  for (int i = 0; i < 9; ++i) m[i] = v[i].residue();
  return m;
}

namespace {

std::uint64_t group_key(const Mat3& canonical, int prec) {
  const std::uint64_t half = mask_bits((prec + 1) / 2);
  std::uint64_t h = 0;
  for (auto v : canonical) h = splitmix64(h ^ (v & half));
  return h;
}

struct SlotOutcome {
  SlotDiagnostics diag;
  std::vector<PooledCandidate> found;
};

SlotOutcome run_slot(const CorrespondenceSet& x, const RunConfig& cfg, int slot) {
  SlotOutcome out;
  out.diag.slot = slot;
  Rng rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(slot) + 1)));
  const std::uint64_t n = x.pairs.size();
  for (int attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
    out.diag.attempts = attempt + 1;
    std::array<int, 5> pick{};
    for (int i = 0; i < 5; ++i) {
      int c;
      do {
        c = static_cast<int>(uniform_below(rng, n));
      } while (std::find(pick.begin(), pick.begin() + i, c) != pick.begin() + i);
      pick[i] = c;
    }
    EpipolarSample sample;
    sample.prec = cfg.m;
    for (int i = 0; i < 5; ++i) {
      sample.pairs[i] = x.pairs[pick[i]];
      for (auto* v : {&sample.pairs[i].u, &sample.pairs[i].v})
        for (auto& c : *v) c &= mask_bits(cfg.m);
    }
    const SolveResult res = five_point_solve(sample, cfg.lift);
    if (!res.ok()) {
      ++out.diag.resamples[solve_step_name(res.resample)];
      continue;
    }
    out.diag.sample = pick;
    for (const auto& r : res.roots) {
      PooledCandidate pc;
      pc.candidate = r.candidate;
      pc.candidate.sample_id = slot;
      if (canonicalize(pc.candidate.canonical, cfg.m).canonical != pc.candidate.canonical)
        throw std::logic_error("canonical form is not idempotent");
      pc.slot = slot;
      pc.group = group_key(pc.candidate.canonical, cfg.m);
      out.found.push_back(pc);
    }
    out.diag.candidates = static_cast<int>(out.found.size());
    return out;
  }
  out.diag.failed = true;
  return out;
}

}  // namespace

int count_votes(const std::vector<PooledCandidate>& pool, const Dendrogram& d, int node) {
  std::set<std::pair<int, std::uint64_t>> keys;
  const auto& n = d.node(node);
  for (int i = n.begin; i < n.end; ++i) {
    const auto& pc = pool[d.order()[i]];
    keys.emplace(pc.slot, pc.group);
  }
  return static_cast<int>(keys.size());
}

void classify_pool(RankedResult& result) {
  const RunConfig& cfg = result.config;
  if (result.pool.empty()) throw AllSamplesFailed("no candidates to classify");
  std::vector<UnramifiedElement> data;
  data.reserve(result.pool.size());
  for (const auto& pc : result.pool) data.push_back(encode_matrix(pc.candidate.canonical, cfg.m));
  const Dendrogram d = build_dendrogram(data);

  Clustering ideal;
  const int k = std::min<int>(cfg.k, static_cast<int>(data.size()) - 1);
  bool split = false;
  if (k >= 2) {
    try {
      result.validity = validity_index(d, k);
      ideal = result.validity.ideal;
      split = true;
    } catch (const SingleCluster&) {
    }
  }
  if (!split) {
    ideal.clusters = {d.canonical(0)};
    ideal.energy = d.best(ideal.clusters[0]);
    result.validity.ideal = ideal;
    result.validity.argmin_clusters = 1;
  }

  std::vector<ClusterReport> reports;
  for (int node : ideal.clusters) reports.push_back(cluster_report(d, node, count_votes(result.pool, d, node)));
  result.ranked = rank_clusters(d, std::move(reports), cfg.tie_tol);

  const ClusterReport& win = result.ranked.front();
  result.winner_centres.clear();
  for (int leaf : win.centre.leaves) result.winner_centres.push_back(decode_matrix(data[d.order()[d.node(leaf).begin]]));
}

RankedResult run_ransacp(const CorrespondenceSet& x, const RunConfig& cfg) {
  if (x.pairs.size() < 5) throw InsufficientData("need at least five correspondences");
  if (cfg.m < 4 || cfg.m > kMaxPrecision) throw std::invalid_argument("precision m must lie in [4, 64]");
  if (cfg.m > x.prec) throw MixedPrecision("requested precision exceeds the input precision");
  if (cfg.samples < 1) throw std::invalid_argument("need at least one sample slot");
  if (cfg.k < 2 || cfg.k > 10 * cfg.samples) throw std::invalid_argument("k must lie in [2, 10 N]");

  RankedResult result;
  result.config = cfg;
  std::vector<SlotOutcome> outcomes(cfg.samples);
  unsigned threads = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, cfg.samples);
  std::atomic<int> next{0};
  std::vector<std::string> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (int s; (s = next.fetch_add(1)) < cfg.samples;) outcomes[s] = run_slot(x, cfg, s);
    } catch (const std::exception& e) {
      errors[id] = e.what();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::logic_error("sample slot failed: " + e);

  for (auto& o : outcomes) {
    result.slots.push_back(o.diag);
    result.pool.insert(result.pool.end(), o.found.begin(), o.found.end());
  }
  if (result.pool.empty()) throw AllSamplesFailed("every sample slot exhausted its resamples");
  classify_pool(result);

  if (x.ground_truth) {
    const Mat3 gt = canonicalize(*x.ground_truth, cfg.m).canonical;
    const std::size_t n = result.pool.size();
    std::vector<std::uint64_t> soa(9 * n);
    for (std::size_t j = 0; j < n; ++j)
      for (int i = 0; i < 9; ++i) soa[i * n + j] = result.pool[j].candidate.canonical[i];
    std::vector<std::uint8_t> depth(n);
    kernels::agreement_depths(soa.data(), 9, n, gt.data(), cfg.m, depth.data());
    result.ground_truth_depths.assign(depth.begin(), depth.end());
    result.agreement_depth = depth[result.ranked.front().centre.representative];
  }
  return result;
}

}  // namespace padicpose
