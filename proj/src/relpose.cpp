#include "padicpose/relpose.hpp"

#include "padicpose/errors.hpp"
#include "padicpose/kernels.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace padicpose {

namespace {

using PolyMat = std::array<MPoly, 9>;

MPoly det3(const PolyMat& e) {
  return e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
         e[2] * (e[3] * e[7] - e[4] * e[6]);
}

// Dot product of rows a and b.
MPoly row_dot(const PolyMat& e, int a, int b) {
  return e[3 * a] * e[3 * b] + e[3 * a + 1] * e[3 * b + 1] + e[3 * a + 2] * e[3 * b + 2];
}

}  // namespace

Row9 epipolar_row(const Vec3& u, const Vec3& v, int prec) {
  Row9 r;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) r[3 * j + k] = (u[j] * v[k]) & mask_bits(prec);
  return r;
}

Mat3 PencilE::at(const std::array<std::uint64_t, 4>& x) const {
  Mat3 e{};
  for (int t = 0; t < 4; ++t)
    for (int q = 0; q < 9; ++q) e[q] += basis[t][q] * x[t];
  return mat_mask(e, prec);
}

PencilE solve_linear_five(const EpipolarSample& sample) {
  std::array<Row9, 5> rows;
  for (int i = 0; i < 5; ++i) rows[i] = epipolar_row(sample.pairs[i].u, sample.pairs[i].v, sample.prec);
  PencilE p;
  p.prec = sample.prec;
  p.staircase = nullspace_staircase(rows, sample.prec);
  for (int t = 0; t < 4; ++t) std::copy(p.staircase.vectors[t].begin(), p.staircase.vectors[t].end(), p.basis[t].begin());
  for (int q = 0; q < 9; ++q) {
    MPoly f(4, p.prec);
    for (int t = 0; t < 4; ++t) {
      Monomial mono;
      mono.e[t] = 1;
      f.add_term(mono, p.basis[t][q]);
    }
    p.entries[q] = f;
  }
  return p;
}

std::vector<MPoly> TraceSystem::all() const {
  std::vector<MPoly> out(cubics.begin(), cubics.end());
  out.push_back(det);
  return out;
}

TraceSystem trace_cubics(const PencilE& pencil) {
  const PolyMat& e = pencil.entries;
  PolyMat g;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g[3 * r + c] = row_dot(e, r, c);
  const MPoly tr = g[0] + g[4] + g[8];
  TraceSystem s;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const MPoly p = g[3 * r] * e[c] + g[3 * r + 1] * e[3 + c] + g[3 * r + 2] * e[6 + c];
      s.cubics[3 * r + c] = p.scaled(2) - tr * e[3 * r + c];
    }
  s.det = det3(e);
  s.L = MPoly(4, 1);
  return s;
}

MPoly compute_L(const PencilE& pencil) {
  MPoly l(4, 1), q(4, 1);
  for (const auto& f : pencil.entries) {
    const MPoly f2 = reduce_mod2(f);
    l = l + f2;
    q = q + f2 * f2;
  }
  if (l.is_zero() && q.is_zero()) {
    bool all_zero = true;
    for (const auto& f : pencil.entries) all_zero = all_zero && reduce_mod2(f).is_zero();
    if (all_zero) throw ZeroPencilMod2("E(x) vanishes mod 2");
  }
  if (!(q == l * l)) throw std::logic_error("Tr(EE^T) mod 2 is not the square of the entry sum");
  return l;
}

TraceSystem build_trace_system(const PencilE& pencil) {
  TraceSystem s = trace_cubics(pencil);
  s.L = compute_L(pencil);
  return s;
}

Mod2Points mod2_candidate_points(const TraceSystem& system) {
  std::vector<MPoly> f = system.all();
  f.push_back(system.L);
  Mod2Points out;
  out.points = projective_f2_points(f, 4);
  out.all_points_pass = system.L.is_zero() && reduce_mod2(system.det).is_zero();
  return out;
}

Triangularization triangularize_columns(const PencilE& pencil) {
  const PolyMat& e = pencil.entries;
  const int m = pencil.prec;
  auto pick = [&](const std::vector<int>& cols, auto&& value) {
    for (int c : cols)
      if (!reduce_mod2(value(c)).is_zero()) return c;
    for (int c : cols)
      if (!value(c).is_zero()) return c;
    return -1;
  };

  const int p0 = pick({0, 1, 2}, [&](int c) { return e[c]; });
  if (p0 < 0) throw PivotFailure("first row of E(x) is zero");
  std::vector<int> rest;
  for (int c = 0; c < 3; ++c)
    if (c != p0) rest.push_back(c);
  // 2x2 minor on rows {0, r} and columns {p0, j}.
  auto minor = [&](int r, int j) { return e[p0] * e[3 * r + j] - e[j] * e[3 * r + p0]; };
  const int p1 = pick(rest, [&](int j) { return minor(1, j); });
  if (p1 < 0) throw PivotFailure("second stage has no nonzero pivot");
  const int q = rest[0] == p1 ? rest[1] : rest[0];

  Triangularization tri;
  tri.column_order = {p0, p1, q};
  int inversions = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) inversions += tri.column_order[a] > tri.column_order[b];
  tri.sign = inversions % 2 ? -1 : 1;

  const MPoly zero(4, m);
  const MPoly det = det3(e);
  const MPoly t33 = tri.sign > 0 ? det : -det;
  tri.t = {e[p0], zero, zero, e[3 + p0], minor(1, p1), zero, e[6 + p0], minor(2, p1), t33};
  // Bareiss identity: the undivided stage-two entry equals T11 * T33.
  const MPoly raw = minor(1, p1) * minor(2, q) - minor(1, q) * minor(2, p1);
  if (!(raw == e[p0] * t33)) throw std::logic_error("Bareiss division identity failed");

  // Columns of C: e_p0, E00 e_p1 - E0p1 e_p0, T22 e_q - M1q e_p1 + (E1q E0p1 - E1p1 E0q) e_p0.
  tri.c.fill(zero);
  const MPoly one = MPoly::constant(1, 4, m);
  tri.c[3 * p0 + 0] = one;
  tri.c[3 * p1 + 1] = e[p0];
  tri.c[3 * p0 + 1] = -e[p1];
  tri.c[3 * q + 2] = minor(1, p1);
  tri.c[3 * p1 + 2] = -minor(1, q);
  tri.c[3 * p0 + 2] = e[3 + q] * e[p1] - e[3 + p1] * e[q];

  const std::array<MPoly, 3> d = {tri.t[0], tri.t[4], tri.t[8]};
  for (int i = 0; i < 3; ++i) {
    if (d[i].is_zero()) throw PivotFailure("triangular diagonal entry vanishes");
    const Normalized n = content_normalize(d[i]);
    tri.diag[i] = n.poly;
    tri.diag_shift[i] = n.shift;
  }
  return tri;
}

std::array<MPoly, 3> gram_column(const PencilE& pencil, int k) {
  const PolyMat& e = pencil.entries;
  std::array<MPoly, 3> out;
  for (int i = 0; i < 3; ++i) {
    MPoly f(4, pencil.prec);
    if (i == k) {
      f = row_dot(e, k, k);
      for (int j = 0; j < 3; ++j)
        if (j != k) f = f - row_dot(e, j, j);
    } else {
      f = row_dot(e, i, k).scaled(2);
    }
    out[i] = f.is_zero() ? f : content_normalize(f).poly;
  }
  return out;
}

Decomposition decompose_trace_variety(const PencilE& pencil, const TraceSystem& system,
                                      const Triangularization& tri) {
  const MPoly det_a = content_normalize(system.det).poly;
  std::array<std::array<MPoly, 3>, 3> g;
  for (int k = 0; k < 3; ++k) g[k] = gram_column(pencil, k);

  auto add_column = [](std::vector<MPoly>& polys, const std::array<MPoly, 3>& col) {
    for (const auto& f : col)
      if (!f.is_zero()) polys.push_back(f);
  };

  // Column k of (2EE^T - Tr I) T vanishes; T is lower triangular, so the last
  // column gives T33 g3 = 0, then T22 g2 = 0 on g3 = 0, then T11 g1 = 0.
  Decomposition out;
  std::vector<ComponentSystem> raw(4);
  raw[0] = {{tri.diag[2]}, "T33=0"};
  add_column(raw[1].polys, g[2]);
  raw[1].polys.push_back(tri.diag[1]);
  raw[1].provenance = "g3=0,T22=0";
  add_column(raw[2].polys, g[2]);
  add_column(raw[2].polys, g[1]);
  raw[2].polys.push_back(tri.diag[0]);
  raw[2].provenance = "g3=0,g2=0,T11=0";
  add_column(raw[3].polys, g[2]);
  add_column(raw[3].polys, g[1]);
  add_column(raw[3].polys, g[0]);
  raw[3].provenance = "g3=0,g2=0,g1=0";
  out.raw_branches = static_cast<int>(raw.size());

  // Absorption: a component whose polynomial set contains another's is a subvariety of it.
  auto keys = [](const ComponentSystem& c) {
    std::set<std::string> s;
    for (const auto& f : c.polys) s.insert(f.to_string());
    return s;
  };
  std::vector<std::set<std::string>> ks;
  for (const auto& c : raw) ks.push_back(keys(c));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < raw.size() && !absorbed; ++j) {
      if (i == j || !std::includes(ks[i].begin(), ks[i].end(), ks[j].begin(), ks[j].end())) continue;
      absorbed = ks[i] != ks[j] || j < i;
    }
    if (absorbed) continue;
    ComponentSystem c = raw[i];
    // T33 is det E up to sign, so det(A) may already be present.
    bool has_det = false;
    for (const auto& f : c.polys) has_det = has_det || f == det_a || f == -det_a;
    if (!has_det) c.polys.push_back(det_a);
    out.components.push_back(std::move(c));
  }
  out.overflow_warning = out.raw_branches > 24;
  return out;
}

bool component_vanishes_mod2(const ComponentSystem& comp, const F2Point& point) {
  const std::vector<std::uint64_t> pt(point.begin(), point.end());
  for (const auto& f : comp.polys)
    if (eval(reduce_mod2(f), pt) != 0) return false;
  return true;
}

const char* solve_step_name(SolveStep s) {
  switch (s) {
    case SolveStep::None: return "none";
    case SolveStep::Step1Rank: return "step1-rank";
    case SolveStep::Step1Degenerate: return "step1-det-mod2";
    case SolveStep::Step1Mod2: return "step1-mod2";
    case SolveStep::PivotFailure: return "pivot-failure";
    case SolveStep::Step2PositiveDimensional: return "step2-positive-dimensional";
    case SolveStep::Step3NoLift: return "step3-no-lift";
  }
  return "unknown";
}

std::vector<std::array<std::uint64_t, 3>> lift_chart(const PencilE& pencil, int chart,
                                                     const std::vector<std::array<std::uint64_t, 3>>& seeds,
                                                     int k, std::size_t max_classes, ChartLift* stats) {
  std::vector<std::array<std::uint64_t, 3>> level = seeds;
  if (stats) {
    stats->seeds = static_cast<int>(seeds.size());
    stats->level_sizes = {static_cast<int>(seeds.size())};
  }
  std::vector<std::uint64_t> y0, y1, y2;
  std::vector<std::uint8_t> keep;
  for (int bit = 1; bit < k && !level.empty(); ++bit) {
    const std::uint64_t step = std::uint64_t{1} << bit;
    const std::size_t n = level.size() * 8;
    y0.resize(n);
    y1.resize(n);
    y2.resize(n);
    keep.resize(n);
    for (std::size_t i = 0; i < level.size(); ++i)
      for (int b = 0; b < 8; ++b) {
        y0[8 * i + b] = level[i][0] + ((b >> 2) & 1) * step;
        y1[8 * i + b] = level[i][1] + ((b >> 1) & 1) * step;
        y2[8 * i + b] = level[i][2] + (b & 1) * step;
      }
    kernels::essential_zero_mask(pencil.basis, chart, y0.data(), y1.data(), y2.data(), n, bit + 1, keep.data());
    std::vector<std::array<std::uint64_t, 3>> next;
    for (std::size_t i = 0; i < n; ++i)
      if (keep[i]) next.push_back({y0[i], y1[i], y2[i]});
    level = std::move(next);
    if (stats) stats->level_sizes.push_back(static_cast<int>(level.size()));
    if (level.size() > max_classes) {
      if (stats) stats->overflow = true;
      return {};
    }
  }
  return level;
}

bool verify_root(const EpipolarSample& sample, const TraceSystem& system, const PencilE& pencil,
                 const std::array<std::uint64_t, 4>& x) {
  const std::vector<std::uint64_t> pt(x.begin(), x.end());
  for (const auto& f : system.all())
    if (eval(f, pt) != 0) return false;
  const Mat3 e = pencil.at(x);
  for (const auto& p : sample.pairs)
    if (bilinear(p.u, e, p.v, sample.prec) != 0) return false;
  return true;
}

SolveResult five_point_solve(const EpipolarSample& sample, const LiftOptions& options) {
  SolveResult res;
  auto fail = [&](SolveStep s, const std::string& why) {
    res.resample = s;
    res.detail = why;
    res.roots.clear();
    return res;
  };

  PencilE pencil;
  TraceSystem system;
  Triangularization tri;
  try {
    pencil = solve_linear_five(sample);
  } catch (const RankDeficient& e) {
    return fail(SolveStep::Step1Rank, e.what());
  }
  try {
    system = build_trace_system(pencil);
  } catch (const ZeroPencilMod2& e) {
    return fail(SolveStep::Step1Mod2, e.what());
  }
  if (reduce_mod2(system.det).is_zero()) return fail(SolveStep::Step1Degenerate, "det E vanishes mod 2");
  try {
    tri = triangularize_columns(pencil);
  } catch (const PivotFailure& e) {
    return fail(SolveStep::PivotFailure, e.what());
  }

  const Decomposition dec = decompose_trace_variety(pencil, system, tri);
  res.diag.components = static_cast<int>(dec.components.size());
  bool some_nonzero = false;
  for (const auto& c : dec.components)
    for (const auto& f : c.polys) some_nonzero = some_nonzero || !reduce_mod2(f).is_zero();
  if (!some_nonzero) return fail(SolveStep::Step1Mod2, "all components vanish mod 2");

  if (options.groebner_diagnostics) {
    res.diag.dimension_gate_pass = true;
    for (const auto& c : dec.components) {
      std::array<int, 4> dims{};
      for (int j = 0; j < 4; ++j) {
        std::vector<MPoly> chart;
        for (const auto& f : c.polys) chart.push_back(specialize(reduce_mod2(f), j, 1));
        dims[j] = is_zero_dimensional(buchberger(chart)) ? 1 : 0;
        res.diag.dimension_gate_pass = res.diag.dimension_gate_pass && dims[j];
      }
      res.diag.zero_dimensional.push_back(dims);
    }
  }

  const Mod2Points mod2 = mod2_candidate_points(system);
  res.diag.mod2_points = static_cast<int>(mod2.points.size());
  std::array<std::vector<std::array<std::uint64_t, 3>>, 4> seeds;
  for (const auto& p : mod2.points) {
    int j = 0;
    while (p[j] == 0) ++j;
    std::array<std::uint64_t, 3> y{};
    for (int t = 0, s = 0; t < 4; ++t)
      if (t != j) y[s++] = p[t];
    seeds[j].push_back(y);
  }

  std::set<Mat3> seen;
  for (int j = 0; j < 4; ++j) {
    if (seeds[j].empty()) continue;
    const auto sols = lift_chart(pencil, j, seeds[j], sample.prec, options.max_classes, &res.diag.charts[j]);
    if (res.diag.charts[j].overflow)
      return fail(SolveStep::Step2PositiveDimensional,
                  "chart " + std::to_string(j + 1) + " exceeded " + std::to_string(options.max_classes) + " classes");
    for (const auto& y : sols) {
      LiftedRoot r;
      r.chart = j;
      for (int t = 0, s = 0; t < 4; ++t) r.x[t] = t == j ? 1 : y[s++];
      if (!verify_root(sample, system, pencil, r.x))
        throw std::logic_error("lifted point fails the undecomposed system");
      r.candidate = canonicalize(pencil.at(r.x), sample.prec);
      if (!seen.insert(r.candidate.canonical).second) continue;
      res.roots.push_back(r);
    }
  }
  if (res.roots.empty()) return fail(SolveStep::Step3NoLift, "no chart point lifts to full precision");
  return res;
}

}  // namespace padicpose
