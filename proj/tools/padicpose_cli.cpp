#include "padicpose/errors.hpp"
#include "padicpose/io.hpp"
#include "padicpose/kernels.hpp"
#include "padicpose/pipeline.hpp"
#include "padicpose/scene.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace padicpose;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitAllFailed = 3;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InputError("bad sample index '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-adic five-point relative pose and RanSaC_p"};
  app.require_subcommand(1);

  int points = 200, sim_m = 16, sim_n = 0;
  double outlier_frac = 0;
  std::uint64_t seed = 1;
  std::string out_path;
  auto* simulate = app.add_subcommand("simulate", "write a synthetic correspondence set");
  simulate->add_option("--points", points, "number of correspondences")->check(CLI::NonNegativeNumber);
  simulate->add_option("--outlier-frac", outlier_frac, "fraction of pairs replaced by random ones")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--m", sim_m, "precision")->check(CLI::Range(4, 64));
  simulate->add_option("--n", sim_n, "draw first-image points from a 2^n pixel grid (0: off)")->check(CLI::Range(0, 64));
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_option("--out", out_path, "output file (default stdout)");

  std::string in_path, sample_str, report_path;
  int m = 16;
  auto* solve = app.add_subcommand("solve", "run the five-point lift on one sample");
  solve->add_option("--in", in_path, "correspondence file")->required();
  solve->add_option("--sample", sample_str, "five comma-separated pair indices")->required();
  solve->add_option("--m", m, "precision")->check(CLI::Range(4, 64));

  RunConfig cfg;
  auto* ransac = app.add_subcommand("ransac", "run RanSaC_p and write a report");
  ransac->add_option("--in", in_path, "correspondence file")->required();
  ransac->add_option("--samples", cfg.samples, "number of sample slots N")->check(CLI::PositiveNumber);
  ransac->add_option("--k", cfg.k, "cluster bound k");
  ransac->add_option("--m", cfg.m, "candidate precision")->check(CLI::Range(4, 64));
  ransac->add_option("--seed", cfg.seed, "random seed");
  ransac->add_option("--tie-tol", cfg.tie_tol, "relative tie tolerance for ranking")->check(CLI::Range(0.0, 1.0));
  ransac->add_option("--max-resamples", cfg.max_resamples, "redraws per slot")->check(CLI::NonNegativeNumber);
  ransac->add_option("--threads", cfg.threads, "worker threads (0: hardware)")->check(CLI::NonNegativeNumber);
  ransac->add_option("--report", report_path, "report file (default stdout)");

  int ck = 12;
  double ctie = 0.05;
  auto* cluster = app.add_subcommand("cluster", "classify candidate matrices only");
  cluster->add_option("--in", in_path, "matrix file")->required();
  cluster->add_option("--k", ck, "cluster bound k");
  cluster->add_option("--tie-tol", ctie, "relative tie tolerance")->check(CLI::Range(0.0, 1.0));
  cluster->add_option("--report", report_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*simulate) {
      const Scene s = simulate_scene(points, outlier_frac, sim_m, sim_n, seed);
      CorrespondenceSet x{sim_m, s.pairs, s.essential};
      if (out_path.empty() || out_path == "-") {
        write_correspondences(std::cout, x);
      } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        write_correspondences(out, x);
      }
      return 0;
    }
    if (*solve) {
      auto in = open_in(in_path);
      const CorrespondenceSet x = read_correspondences(in);
      const auto idx = parse_indices(sample_str);
      if (idx.size() != 5) throw InputError("--sample needs exactly five indices");
      if (m > x.prec) throw InputError("--m exceeds the input precision");
      EpipolarSample sample;
      sample.prec = m;
      for (int i = 0; i < 5; ++i) {
        if (idx[i] < 0 || idx[i] >= static_cast<int>(x.pairs.size())) throw InputError("sample index out of range");
        sample.pairs[i] = x.pairs[idx[i]];
        for (auto* v : {&sample.pairs[i].u, &sample.pairs[i].v})
          for (auto& c : *v) c &= mask_bits(m);
      }
      const SolveResult res = five_point_solve(sample);
      json j;
      j["resample"] = res.ok() ? json(nullptr) : json(solve_step_name(res.resample));
      if (!res.ok()) j["detail"] = res.detail;
      json cands = json::array();
      for (const auto& r : res.roots) {
        json c = candidate_json(r.candidate);
        c["chart"] = r.chart + 1;
        c["x"] = r.x;
        cands.push_back(c);
      }
      j["candidates"] = cands;
      j["components"] = res.diag.components;
      j["mod2_points"] = res.diag.mod2_points;
      json sizes = json::array();
      for (const auto& ch : res.diag.charts) sizes.push_back(ch.level_sizes);
      j["lift_level_sizes"] = sizes;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*ransac) {
      auto in = open_in(in_path);
      const CorrespondenceSet x = read_correspondences(in);
      if (cfg.m > x.prec) throw InputError("--m exceeds the input precision");
      const RankedResult r = run_ransacp(x, cfg);
      json rep = report_json(r);
      rep["isa"] = kernels::isa_name(kernels::active_isa());
      write_json(rep, report_path);
      return 0;
    }
    if (*cluster) {
      auto in = open_in(in_path);
      RankedResult r;
      int prec = 0;
      r.pool = read_candidates(in, &prec);
      if (r.pool.empty()) throw InputError("no matrices in input");
      r.config.m = prec;
      r.config.k = ck;
      r.config.tie_tol = ctie;
      classify_pool(r);
      write_json(report_json(r), report_path);
      return 0;
    }
  } catch (const AllSamplesFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAllFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
