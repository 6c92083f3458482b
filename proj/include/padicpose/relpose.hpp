#pragma once

#include "padicpose/candidate.hpp"
#include "padicpose/groebner.hpp"
#include "padicpose/hensel.hpp"
#include "padicpose/modmat.hpp"
#include "padicpose/mpoly.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace padicpose {

struct PointPair {
  Vec3 u{};
  Vec3 v{};
};

struct EpipolarSample {
  int prec = 0;
  std::array<PointPair, 5> pairs{};
};

Row9 epipolar_row(const Vec3& u, const Vec3& v, int prec);

// E(x) = x1 E1 + ... + x4 E4 from a staircase nullspace basis.
struct PencilE {
  int prec = 0;
  std::array<Mat3, 4> basis{};
  std::array<MPoly, 9> entries;  // row-major linear forms in x1..x4
  StaircaseBasis staircase;

  Mat3 at(const std::array<std::uint64_t, 4>& x) const;
};

PencilE solve_linear_five(const EpipolarSample& sample);

struct TraceSystem {
  std::array<MPoly, 9> cubics;  // entries of 2EE^TE - Tr(EE^T)E, row-major
  MPoly det;
  MPoly L;  // over F2

  std::vector<MPoly> all() const;  // nine cubics then det
};

// Cubics and det; L is filled by compute_L.
TraceSystem trace_cubics(const PencilE& pencil);
MPoly compute_L(const PencilE& pencil);
TraceSystem build_trace_system(const PencilE& pencil);

struct Mod2Points {
  std::vector<F2Point> points;  // projective representatives
  bool all_points_pass = false;
};
Mod2Points mod2_candidate_points(const TraceSystem& system);

// Column triangularization E * C = T with T upper-right zero:
//   T = [T11 0 0; T21 T22 0; T31 T32 T33],
// T11 a linear entry of E, T22 a 2x2 column minor, T33 = +-det E.
struct Triangularization {
  std::array<MPoly, 9> t;  // row-major
  std::array<MPoly, 9> c;  // column transform, row-major
  std::array<int, 3> column_order{};
  int sign = 1;  // sign of column_order as a permutation
  std::array<MPoly, 3> diag;  // content-normalized T11, T22, T33
  std::array<int, 3> diag_shift{};
};
Triangularization triangularize_columns(const PencilE& pencil);

struct ComponentSystem {
  std::vector<MPoly> polys;
  std::string provenance;
};

struct Decomposition {
  std::vector<ComponentSystem> components;
  int raw_branches = 0;
  bool overflow_warning = false;
};

// Column k of 2EE^T - Tr(EE^T) I, entries content-normalized.
std::array<MPoly, 3> gram_column(const PencilE& pencil, int k);
Decomposition decompose_trace_variety(const PencilE& pencil, const TraceSystem& system,
                                      const Triangularization& tri);
bool component_vanishes_mod2(const ComponentSystem& comp, const F2Point& point);

enum class SolveStep {
  None,
  Step1Rank,           // rank mod 2 below five
  Step1Degenerate,     // det E vanishes identically mod 2
  Step1Mod2,           // every component is zero mod 2
  PivotFailure,
  Step2PositiveDimensional,  // lifting tree exceeded its class cap
  Step3NoLift,
};
const char* solve_step_name(SolveStep s);

struct LiftOptions {
  std::size_t max_classes = 1u << 14;  // per chart and level
  bool groebner_diagnostics = true;
};

struct ChartLift {
  int seeds = 0;
  std::vector<int> level_sizes;  // |S_k| for k = 1..m
  bool overflow = false;
};

struct SolveDiagnostics {
  int components = 0;
  int mod2_points = 0;
  // Per component and chart: 1 if the chart piece mod 2 is zero-dimensional.
  std::vector<std::array<int, 4>> zero_dimensional;
  bool dimension_gate_pass = false;
  std::array<ChartLift, 4> charts;
};

struct LiftedRoot {
  int chart = 0;
  std::array<std::uint64_t, 4> x{};
  CandidateEssential candidate;
};

struct SolveResult {
  SolveStep resample = SolveStep::None;
  std::string detail;
  std::vector<LiftedRoot> roots;
  SolveDiagnostics diag;

  bool ok() const { return resample == SolveStep::None; }
};

// All chart points mod 2^k (x_chart = 1, earlier coordinates even) zeroing the ten cubics.
std::vector<std::array<std::uint64_t, 3>> lift_chart(const PencilE& pencil, int chart,
                                                     const std::vector<std::array<std::uint64_t, 3>>& seeds,
                                                     int k, std::size_t max_classes, ChartLift* stats);

SolveResult five_point_solve(const EpipolarSample& sample, const LiftOptions& options = {});

// Residual check against the undecomposed system and the five epipolar constraints.
bool verify_root(const EpipolarSample& sample, const TraceSystem& system, const PencilE& pencil,
                 const std::array<std::uint64_t, 4>& x);

}  // namespace padicpose
