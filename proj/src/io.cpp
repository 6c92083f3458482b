#include "padicpose/io.hpp"

#include "padicpose/errors.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string>

namespace padicpose {

using nlohmann::json;

namespace {

std::uint64_t to_residue(const json& v, int prec) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>() & mask_bits(prec);
  if (v.is_number_integer()) return static_cast<std::uint64_t>(v.get<std::int64_t>()) & mask_bits(prec);
  throw InputError("expected an integer, got " + v.dump());
}

Vec3 to_vec3(const json& v, int prec) {
  if (!v.is_array() || v.size() != 3) throw InputError("expected a 3-vector, got " + v.dump());
  return {to_residue(v[0], prec), to_residue(v[1], prec), to_residue(v[2], prec)};
}

Mat3 to_mat3(const json& v, int prec) {
  json flat = v;
  if (v.is_array() && v.size() == 1 && v[0].is_array()) flat = v[0];
  if (flat.is_array() && flat.size() == 3 && flat[0].is_array()) {
    json f = json::array();
    for (const auto& row : flat)
      for (const auto& e : row) f.push_back(e);
    flat = f;
  }
  if (!flat.is_array() || flat.size() != 9) throw InputError("expected 9 matrix entries, got " + v.dump());
  Mat3 m;
  for (int i = 0; i < 9; ++i) m[i] = to_residue(flat[i], prec);
  return m;
}

int read_prec(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(std::string("missing integer \"") + key + "\"");
  const int p = j[key].get<int>();
  if (p < 1 || p > kMaxPrecision) throw InputError("precision out of range: " + std::to_string(p));
  return p;
}

GridCoord to_grid(const json& v, int n) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw InputError("pixel coordinate must be a nonnegative integer");
  const auto c = v.get<std::uint64_t>();
  if (c > mask_bits(n)) throw InputError("pixel coordinate exceeds the grid");
  return {c, n};
}

}  // namespace

CorrespondenceSet read_correspondences(std::istream& in) {
  CorrespondenceSet s;
  std::optional<json> gt;
  std::vector<PixelPair> pixels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (j.contains("ground_truth")) {
        gt = j;
        continue;
      }
      if (j.contains("px")) {
        const int n = read_prec(j, "n");
        if (!j["px"].is_array() || j["px"].size() != 2 || !j.contains("px2") || !j["px2"].is_array() ||
            j["px2"].size() != 2)
          throw InputError("pixel pairs need px and px2 with two coordinates each");
        if (s.prec && s.prec != n) throw InputError("mixed resolutions");
        s.prec = n;
        pixels.push_back({to_grid(j["px"][0], n), to_grid(j["px"][1], n), to_grid(j["px2"][0], n), to_grid(j["px2"][1], n)});
        continue;
      }
      const int m = read_prec(j, "m");
      if (s.prec && s.prec != m) throw InputError("mixed precisions");
      s.prec = m;
      if (!j.contains("u") || !j.contains("v")) throw InputError("expected u and v");
      s.pairs.push_back({to_vec3(j["u"], m), to_vec3(j["v"], m)});
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!pixels.empty()) {
    if (!s.pairs.empty()) throw InputError("cannot mix pixel and residue lines");
    s = encode_correspondences(pixels, s.prec);
  }
  if (gt) {
    const int m = read_prec(*gt, "m");
    s.ground_truth = to_mat3((*gt)["ground_truth"], m);
    if (s.prec == 0) s.prec = m;
  }
  return s;
}

void write_correspondences(std::ostream& out, const CorrespondenceSet& x) {
  if (x.ground_truth) {
    const Mat3& g = *x.ground_truth;
    json row = json::array();
    for (auto v : g) row.push_back(v);
    out << json{{"ground_truth", json::array({row})}, {"m", x.prec}}.dump() << "\n";
  }
  for (const auto& p : x.pairs)
    out << json{{"u", p.u}, {"v", p.v}, {"m", x.prec}}.dump() << "\n";
}

std::vector<PooledCandidate> read_candidates(std::istream& in, int* prec) {
  std::vector<PooledCandidate> out;
  std::string line;
  int lineno = 0;
  int m = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const int p = read_prec(j, "m");
      if (m && p != m) throw InputError("mixed precisions");
      m = p;
      if (!j.contains("E")) throw InputError("expected E");
      PooledCandidate pc;
      pc.candidate = canonicalize(to_mat3(j["E"], m), m);
      pc.slot = j.contains("slot") ? j["slot"].get<int>() : static_cast<int>(out.size());
      pc.candidate.sample_id = pc.slot;
      out.push_back(pc);
    } catch (const json::exception& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ZeroMatrix& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (prec) *prec = m;
  return out;
}

json matrix_json(const Mat3& m) {
  return json::array({json::array({m[0], m[1], m[2]}), json::array({m[3], m[4], m[5]}), json::array({m[6], m[7], m[8]})});
}

json candidate_json(const CandidateEssential& c) {
  return {{"E", matrix_json(c.entries)},
          {"canonical", matrix_json(c.canonical)},
          {"pivot_index", c.pivot_index},
          {"pivot_valuation", c.pivot_valuation},
          {"sample", c.sample_id}};
}

json report_json(const RankedResult& r) {
  const RunConfig& c = r.config;
  json out;
  out["config"] = {{"m", c.m}, {"n", c.n}, {"samples", c.samples}, {"k", c.k}, {"seed", c.seed},
                   {"tie_tol", c.tie_tol}, {"max_resamples", c.max_resamples}};
  out["candidates"] = r.pool.size();
  json curve = json::array();
  for (const auto& [l, v] : r.validity.curve) curve.push_back({{"clusters", l}, {"validity", v.str()}});
  out["validity_curve"] = curve;
  out["ideal_clusters"] = r.validity.argmin_clusters;
  out["validity_index"] = r.validity.argmin_clusters > 1 ? r.validity.index.str() : "undefined";
  out["plateau"] = {r.validity.plateau.first, r.validity.plateau.second};

  json table = json::array();
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    const auto& rep = r.ranked[i];
    const auto& rc = r.pool[rep.centre.representative].candidate;
    table.push_back({{"rank", i + 1},
                     {"size", rep.size},
                     {"votes", rep.votes},
                     {"depth", rep.depth},
                     {"density", rep.density.str()},
                     {"central_depth", rep.central_depth},
                     {"precision", rep.precision.str()},
                     {"spine_branch_depth", rep.spine_branch_depth},
                     {"centre_count", rep.centre.indices.size()},
                     {"representative", matrix_json(rc.canonical)}});
  }
  out["clusters"] = table;
  json winners = json::array();
  for (const auto& m : r.winner_centres) winners.push_back(matrix_json(m));
  out["winner_centres"] = winners;
  if (r.agreement_depth) out["agreement_depth"] = *r.agreement_depth;

  json slots = json::array();
  for (const auto& s : r.slots) {
    json j = {{"slot", s.slot}, {"attempts", s.attempts}, {"failed", s.failed}, {"candidates", s.candidates}};
    if (!s.failed) j["sample"] = s.sample;
    json rs = json::object();
    for (const auto& [k, v] : s.resamples) rs[k] = v;
    j["resamples"] = rs;
    slots.push_back(j);
  }
  out["slots"] = slots;
  return out;
}

}  // namespace padicpose
