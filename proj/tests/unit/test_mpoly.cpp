#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicpose/errors.hpp"
#include "padicpose/mpoly.hpp"

#include <random>

using namespace padicpose;

namespace {

MPoly x(int i, int prec = 8, int nvars = 4) { return MPoly::variable(i, nvars, prec); }

MPoly random_poly(std::mt19937_64& rng, int max_deg, int prec, int nvars = 4) {
  MPoly f(nvars, prec);
  const int terms = 1 + static_cast<int>(rng() % 8);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int budget = static_cast<int>(rng() % (max_deg + 1));
    for (int i = 0; i < nvars && budget > 0; ++i) {
      const int e = static_cast<int>(rng() % (budget + 1));
      m.e[i] = static_cast<std::uint8_t>(e);
      budget -= e;
    }
    f.add_term(m, rng());
  }
  return f;
}

MPoly random_homogeneous(std::mt19937_64& rng, int deg, int prec) {
  MPoly f(4, prec);
  for (int t = 0; t < 6; ++t) {
    Monomial m;
    int left = deg;
    for (int i = 0; i < 3; ++i) {
      const int e = static_cast<int>(rng() % (left + 1));
      m.e[i] = static_cast<std::uint8_t>(e);
      left -= e;
    }
    m.e[3] = static_cast<std::uint8_t>(left);
    f.add_term(m, rng());
  }
  return f;
}

std::vector<std::uint64_t> random_point(std::mt19937_64& rng, int nvars = 4) {
  std::vector<std::uint64_t> p(nvars);
  for (auto& c : p) c = rng();
  return p;
}

}  // namespace

TEST_CASE("evaluation") {
  const MPoly f = x(0, 3) * x(0, 3) + x(2, 3);
  CHECK(eval(f, {1, 0, 1, 0}) == 2);
  CHECK(eval(MPoly(4, 3), {5, 6, 7, 1}) == 0);
  CHECK_THROWS_AS(eval(f, {1, 0, 1}), ShapeMismatch);
  const PadicInt v = eval(f, std::vector<PadicInt>{PadicInt(3, 2), PadicInt(0, 2), PadicInt(1, 2), PadicInt(0, 2)});
  CHECK(v.precision() == 2);
  CHECK(v.residue() == 2);
}

TEST_CASE("storage invariants and canonical text") {
  MPoly f = x(0, 4) + x(1, 4);
  f.add_term(Monomial{{1, 0, 0, 0}}, 15);
  CHECK(f.size() == 1);
  CHECK(f.to_string() == "1*x2 (mod 2^4)");
  CHECK((x(0, 4) - x(0, 4)).is_zero());
  CHECK(MPoly(4, 4).degree() == -1);

  const MPoly g = x(0, 5) * x(0, 5) * x(2, 5).scaled(3) + x(1, 5) * x(3, 5) + MPoly::constant(7, 4, 5);
  CHECK(g.to_string() == "3*x1^2*x3 + 1*x2*x4 + 7 (mod 2^5)");
  CHECK(g.degree() == 3);
  CHECK_FALSE(g.is_homogeneous());
  CHECK(g.leading_coefficient() == 3);
}

TEST_CASE("degrevlex order") {
  const Monomial a{{2, 0, 0, 0}}, b{{1, 1, 0, 0}}, c{{0, 2, 0, 0}}, d{{1, 0, 1, 0}}, e{{0, 0, 0, 1}};
  CHECK(degrevlex_greater(a, b));
  CHECK(degrevlex_greater(b, c));
  CHECK(degrevlex_greater(c, d));
  CHECK(degrevlex_greater(d, e));
  CHECK_FALSE(degrevlex_greater(a, a));
}

TEST_CASE("gradient") {
  const auto g = gradient(x(0) * x(1));
  REQUIRE(g.size() == 4);
  CHECK(g[0] == x(1));
  CHECK(g[1] == x(0));
  CHECK(g[2].is_zero());
  CHECK(g[3].is_zero());

  for (const auto& p : gradient(MPoly::constant(5, 4, 8))) CHECK(p.is_zero());

  const MPoly cube = x(0) * x(0) * x(0);
  const auto gc = gradient(cube);
  CHECK(gc[0] == (x(0) * x(0)).scaled(3));
  CHECK(reduce_mod2(gc[0]) == reduce_mod2(x(0) * x(0)));

  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const MPoly f = random_poly(rng, 3, 16), h = random_poly(rng, 3, 16);
    const auto gf = gradient(f), gh = gradient(h), gs = gradient(f + h);
    for (int v = 0; v < 4; ++v) CHECK(gs[v] == gf[v] + gh[v]);
  }
}

TEST_CASE("reduction mod 2") {
  const MPoly f = (x(0) * x(1)).scaled(2) + x(2);
  CHECK(reduce_mod2(f) == MPoly::variable(2, 4, 1));
  CHECK(reduce_mod2(f).is_f2());

  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) CHECK(reduce_mod2(random_poly(rng, 3, 16).scaled(4)).is_zero());
}

TEST_CASE("content normalization") {
  auto n = content_normalize(x(0).scaled(2) + x(1).scaled(4));
  CHECK(n.shift == 1);
  CHECK(n.poly == x(0, 7) + x(1, 7).scaled(2));

  n = content_normalize(x(0));
  CHECK(n.shift == 0);
  CHECK(n.poly == x(0));

  n = content_normalize((x(0, 6) + x(1, 6)).scaled(8));
  CHECK(n.shift == 3);
  CHECK(n.poly.precision() == 3);
  CHECK(n.poly == x(0, 3) + x(1, 3));

  CHECK_THROWS_AS(content_normalize(MPoly(4, 8)), ZeroPolynomial);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const MPoly f = random_poly(rng, 3, 16).scaled(std::uint64_t{1} << (rng() % 5));
    if (f.is_zero()) continue;
    const auto r = content_normalize(f);
    const auto p = random_point(rng);
    CHECK(((eval(r.poly, p) << r.shift) & mask_bits(16)) == eval(f, p));
  }
}

TEST_CASE("specialization") {
  const MPoly f = x(0) * x(1) + x(3) * x(3);
  const MPoly s = specialize(f, 3);
  CHECK(s.nvars() == 3);
  CHECK(s == MPoly::variable(0, 3, 8) * MPoly::variable(1, 3, 8) + MPoly::constant(1, 3, 8));
  CHECK(specialize(x(0), 0) == MPoly::constant(1, 3, 8));

  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const MPoly c = random_homogeneous(rng, 3, 16);
    for (int v = 0; v < 4; ++v) {
      const MPoly sp = specialize(c, v);
      CHECK(sp.degree() <= 3);
      // Substituting then evaluating equals evaluating with a 1 inserted.
      const auto p = random_point(rng, 3);
      std::vector<std::uint64_t> full(p);
      full.insert(full.begin() + v, 1);
      CHECK(eval(sp, p) == eval(c, full));
    }
  }
}

TEST_CASE("ring axioms on random cubics") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const MPoly f = random_poly(rng, 3, 16), g = random_poly(rng, 3, 16), h = random_poly(rng, 3, 16);
    CHECK((f + g) * h == f * h + g * h);
    CHECK(f * g == g * f);
    CHECK(f - f == MPoly(4, 16));
    const auto p = random_point(rng);
    CHECK(eval(f * g, p) == ((eval(f, p) * eval(g, p)) & mask_bits(16)));
  }
}

TEST_CASE("homogeneous scaling") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const MPoly f = random_homogeneous(rng, d, 16);
    CHECK(f.is_homogeneous());
    auto p = random_point(rng);
    const std::uint64_t lambda = rng() | 1;
    std::vector<std::uint64_t> q(p);
    for (auto& c : q) c *= lambda;
    std::uint64_t ld = 1;
    for (int k = 0; k < d; ++k) ld *= lambda;
    CHECK(eval(f, q) == ((ld * eval(f, p)) & mask_bits(16)));
  }
}

TEST_CASE("mixed precision arithmetic uses the lower precision") {
  const MPoly a = x(0, 8).scaled(5), b = x(0, 3);
  CHECK((a + b).precision() == 3);
  CHECK((a + b) == x(0, 3).scaled(6));
}
