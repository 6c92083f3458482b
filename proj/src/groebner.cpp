#include "padicpose/groebner.hpp"

#include "padicpose/errors.hpp"

#include <algorithm>

namespace padicpose {

bool GroebnerBasis::is_unit_ideal() const {
  return generators.size() == 1 && generators[0].degree() == 0;
}

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& divisors) {
  MPoly p = reduce_mod2(f);
  MPoly r(f.nvars(), 1);
  while (!p.is_zero()) {
    const Monomial lt = p.leading_monomial();
    bool reduced = false;
    for (const auto& g : divisors) {
      if (g.is_zero() || !g.leading_monomial().divides(lt)) continue;
      p = p + g.times_monomial(g.leading_monomial().quotient_of(lt), 1);
      reduced = true;
      break;
    }
    if (!reduced) {
      r.add_term(lt, 1);
      p.add_term(lt, 1);
    }
  }
  return r;
}

MPoly normal_form(const MPoly& f, const GroebnerBasis& b) { return normal_form(f, b.generators); }

MPoly s_polynomial(const MPoly& f, const MPoly& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  return f.times_monomial(f.leading_monomial().quotient_of(l), 1) +
         g.times_monomial(g.leading_monomial().quotient_of(l), 1);
}

namespace {

bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<MPoly>& f) {
  if (f.empty()) throw std::invalid_argument("buchberger needs at least one polynomial");
  const int nvars = f.front().nvars();
  std::vector<MPoly> g;
  for (const auto& p : f) {
    if (p.nvars() != nvars) throw ShapeMismatch("generators differ in nvars");
    MPoly q = reduce_mod2(p);
    if (!q.is_zero()) g.push_back(q);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    if (coprime(g[i].leading_monomial(), g[j].leading_monomial())) continue;
    MPoly h = normal_form(s_polynomial(g[i], g[j]), g);
    if (h.is_zero()) continue;
    for (std::size_t k = 0; k < g.size(); ++k) pairs.emplace_back(k, g.size());
    g.push_back(std::move(h));
  }

  // Minimal basis: drop generators whose leading monomial is a multiple of another's.
  std::vector<MPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !g[j].leading_monomial().divides(g[i].leading_monomial())) continue;
      redundant = !(g[j].leading_monomial() == g[i].leading_monomial()) || j < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    minimal[i] = normal_form(minimal[i], others);
  }
  std::sort(minimal.begin(), minimal.end(), [](const MPoly& a, const MPoly& b) {
    return degrevlex_greater(b.leading_monomial(), a.leading_monomial());
  });
  return GroebnerBasis{nvars, std::move(minimal)};
}

bool is_zero_dimensional(const GroebnerBasis& b) {
  if (b.is_zero_ideal()) return false;
  for (const auto& g : b.generators)
    if (g.degree() == 0) return true;
  for (int v = 0; v < b.nvars; ++v) {
    bool found = false;
    for (const auto& g : b.generators) {
      const Monomial& lm = g.leading_monomial();
      int others = lm.degree() - lm.e[v];
      if (lm.e[v] > 0 && others == 0) found = true;
    }
    if (!found) return false;
  }
  return true;
}

namespace {

bool vanishes(const std::vector<MPoly>& f, const std::vector<std::uint64_t>& pt) {
  for (const auto& p : f)
    if (eval(reduce_mod2(p), pt) != 0) return false;
  return true;
}

std::vector<F2Point> enumerate(const std::vector<MPoly>& f, int nvars, std::uint32_t first) {
  if (nvars < 1 || nvars > kMaxVars) throw ShapeMismatch("nvars must lie in [1, 4]");
  for (const auto& p : f)
    if (p.nvars() != nvars) throw ShapeMismatch("polynomial nvars differs");
  std::vector<F2Point> out;
  for (std::uint32_t bits = first; bits < (1u << nvars); ++bits) {
    std::vector<std::uint64_t> pt(nvars);
    for (int i = 0; i < nvars; ++i) pt[i] = (bits >> (nvars - 1 - i)) & 1;
    if (!vanishes(f, pt)) continue;
    out.emplace_back(pt.begin(), pt.end());
  }
  return out;
}

}  // namespace

std::vector<F2Point> f2_points(const std::vector<MPoly>& f, int nvars) { return enumerate(f, nvars, 0); }

std::vector<F2Point> projective_f2_points(const std::vector<MPoly>& f, int nvars) {
  return enumerate(f, nvars, 1);
}

}  // namespace padicpose
