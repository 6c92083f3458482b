#include "padicpose/hensel.hpp"

#include "padicpose/errors.hpp"
#include "padicpose/modmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace padicpose {

StaircaseBasis nullspace_staircase(const std::array<Row9, 5>& in, int prec) {
  const std::uint64_t mask = mask_bits(prec);
  std::array<Row9, 5> a;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 9; ++j) a[i][j] = in[i][j] & mask;

  StaircaseBasis out;
  out.prec = prec;
  std::array<bool, 9> is_pivot{};
  for (int r = 0; r < 5; ++r) {
    int prow = -1, pcol = -1;
    for (int i = r; i < 5 && prow < 0; ++i)
      for (int j = 0; j < 9; ++j)
        if (!is_pivot[j] && (a[i][j] & 1)) {
          prow = i;
          pcol = j;
          break;
        }
    if (prow < 0) throw RankDeficient("rank mod 2 is " + std::to_string(r));
    std::swap(a[r], a[prow]);
    const std::uint64_t inv = inv_odd64(a[r][pcol]);
    for (auto& v : a[r]) v = (v * inv) & mask;
    for (int i = 0; i < 5; ++i) {
      if (i == r || a[i][pcol] == 0) continue;
      const std::uint64_t f = a[i][pcol];
      for (int j = 0; j < 9; ++j) a[i][j] = (a[i][j] - f * a[r][j]) & mask;
    }
    is_pivot[pcol] = true;
    out.pivot_columns[r] = pcol;
  }

  int t = 0;
  for (int j = 0; j < 9; ++j)
    if (!is_pivot[j]) out.free_columns[t++] = j;
  for (int t2 = 0; t2 < 4; ++t2) {
    Row9 v{};
    const int fc = out.free_columns[t2];
    v[fc] = 1;
    for (int r = 0; r < 5; ++r) v[out.pivot_columns[r]] = (0 - a[r][fc]) & mask;
    out.vectors[t2] = v;
  }
  return out;
}

namespace {

int residual_valuation(const std::vector<const MPoly*>& fs, const std::vector<std::uint64_t>& x, int t) {
  int v = t;
  for (const MPoly* f : fs) v = std::min(v, std::min(val_bits(eval(*f, x) & mask_bits(t)), t));
  return v;
}

Mat3 jacobian(const std::array<std::vector<MPoly>, 3>& grads, const std::vector<std::uint64_t>& x, int t) {
  Mat3 j;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j[3 * r + c] = eval(grads[r][c], x) & mask_bits(t);
  return j;
}

}  // namespace

NewtonLift newton_lift(const std::vector<MPoly>& f, const std::vector<std::uint8_t>& x0, int target_m) {
  if (x0.size() != 3) throw ShapeMismatch("newton_lift works in three variables");
  for (const auto& p : f) {
    if (p.nvars() != 3) throw ShapeMismatch("newton_lift works in three variables");
    if (p.precision() < target_m) throw MixedPrecision("system precision below target");
  }
  const std::vector<std::uint64_t> start(x0.begin(), x0.end());
  for (const auto& p : f)
    if (eval(p, start) & 1) throw std::invalid_argument("starting point is not a root mod 2");

  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f[a].degree() < f[b].degree(); });

  std::vector<std::vector<MPoly>> grads;
  for (const auto& p : f) grads.push_back(gradient(p));

  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      for (std::size_t c = b + 1; c < order.size(); ++c) {
        const std::array<std::size_t, 3> s = {order[a], order[b], order[c]};
        const std::array<std::vector<MPoly>, 3> g = {grads[s[0]], grads[s[1]], grads[s[2]]};
        if ((mat_det(jacobian(g, start, 1), 1) & 1) == 0) continue;

        NewtonLift out;
        out.subsystem = s;
        const std::vector<const MPoly*> fs = {&f[s[0]], &f[s[1]], &f[s[2]]};
        std::vector<std::uint64_t> x = start;
        int steps = 1;
        while ((1 << (steps - 1)) < target_m) ++steps;  // ceil(log2 target_m) + 1
        out.steps = steps;
        out.residual_valuations.push_back(residual_valuation(fs, x, target_m));
        const std::uint64_t mask = mask_bits(target_m);
        for (int k = 1; k <= steps; ++k) {
          const Mat3 jinv = mat_inverse(jacobian(g, x, target_m), target_m);
          Vec3 fx;
          for (int r = 0; r < 3; ++r) fx[r] = eval(*fs[r], x) & mask;
          for (int r = 0; r < 3; ++r) {
            std::uint64_t d = 0;
            for (int q = 0; q < 3; ++q) d += jinv[3 * r + q] * fx[q];
            x[r] = (x[r] - d) & mask;
          }
          const int v = residual_valuation(fs, x, target_m);
          const int want = k >= 6 ? target_m : std::min(1 << k, target_m);
          if (v < want) throw std::logic_error("Newton step lost quadratic convergence");
          out.residual_valuations.push_back(v);
        }
        out.point = x;
        return out;
      }
  throw NoLiftableSubsystem("no 3-subset has a Jacobian invertible mod 2");
}

}  // namespace padicpose
