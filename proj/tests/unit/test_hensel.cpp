#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padicpose/errors.hpp"
#include "padicpose/hensel.hpp"

#include <random>

using namespace padicpose;

namespace {

MPoly x(int i, int prec) { return MPoly::variable(i, 3, prec); }
MPoly c(std::uint64_t v, int prec) { return MPoly::constant(v, 3, prec); }

std::uint64_t dot(const Row9& a, const Row9& b, int m) {
  std::uint64_t s = 0;
  for (int j = 0; j < 9; ++j) s += a[j] * b[j];
  return s & mask_bits(m);
}

int rank_mod2(std::array<Row9, 5> a) {
  int rank = 0;
  for (int col = 0; col < 9 && rank < 5; ++col) {
    int p = -1;
    for (int r = rank; r < 5; ++r)
      if (a[r][col] & 1) p = r;
    if (p < 0) continue;
    std::swap(a[rank], a[p]);
    for (int r = 0; r < 5; ++r)
      if (r != rank && (a[r][col] & 1))
        for (int j = 0; j < 9; ++j) a[r][j] ^= a[rank][j] & 1;
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("staircase of a block identity") {
  std::array<Row9, 5> m{};
  for (int i = 0; i < 5; ++i) m[i][i] = 1;
  const auto b = nullspace_staircase(m, 16);
  for (int t = 0; t < 4; ++t) {
    Row9 e{};
    e[5 + t] = 1;
    CHECK(b.vectors[t] == e);
    CHECK(b.free_columns[t] == 5 + t);
  }
  CHECK(b.pivot_columns == std::array<int, 5>{0, 1, 2, 3, 4});
}

TEST_CASE("staircase residuals on random full-rank systems") {
  std::mt19937_64 rng(99);
  int tested = 0;
  while (tested < 200) {
    std::array<Row9, 5> m;
    for (auto& r : m)
      for (auto& e : r) e = rng() & 0xffff;
    if (rank_mod2(m) < 5) {
      CHECK_THROWS_AS(nullspace_staircase(m, 16), RankDeficient);
      continue;
    }
    ++tested;
    const auto b = nullspace_staircase(m, 16);
    for (int t = 0; t < 4; ++t) {
      for (const auto& r : m) CHECK(dot(r, b.vectors[t], 16) == 0);
      for (int s = 0; s < 4; ++s) CHECK(b.vectors[t][b.free_columns[s]] == (s == t ? 1u : 0u));
    }
    // Deterministic given M.
    const auto again = nullspace_staircase(m, 16);
    CHECK(again.vectors == b.vectors);
  }
}

TEST_CASE("repeated rows are rank deficient") {
  std::mt19937_64 rng(5);
  std::array<Row9, 5> m;
  for (auto& r : m)
    for (auto& e : r) e = rng() & 0xff;
  m[3] = m[1];
  for (auto& e : m[3]) e += 2;  // equal mod 2 only
  CHECK_THROWS_AS(nullspace_staircase(m, 8), RankDeficient);
}

TEST_CASE("Newton lift of a linear system") {
  const std::vector<MPoly> f = {x(0, 8) - c(5, 8), x(1, 8) - c(3, 8), x(2, 8) - c(7, 8)};
  const auto r = newton_lift(f, {1, 1, 1}, 8);
  CHECK(r.point == std::vector<std::uint64_t>{5, 3, 7});
  CHECK(r.residual_valuations.back() == 8);
}

TEST_CASE("Newton lift picks the root above each residue") {
  const MPoly q = x(0, 6) * x(0, 6) + x(0, 6) - c(6, 6);
  const std::vector<MPoly> f = {q, x(1, 6) - c(1, 6), x(2, 6) - c(1, 6)};
  const auto a = newton_lift(f, {0, 1, 1}, 6);
  CHECK(a.point == std::vector<std::uint64_t>{2, 1, 1});
  const auto b = newton_lift(f, {1, 1, 1}, 6);
  CHECK(b.point == std::vector<std::uint64_t>{61, 1, 1});
  for (const auto& r : {a, b})
    for (const auto& p : f) CHECK(eval(p, r.point) == 0);
}

TEST_CASE("singular Jacobian has no liftable subsystem") {
  const std::vector<MPoly> f = {x(0, 8) * x(0, 8), x(1, 8), x(2, 8)};
  CHECK_THROWS_AS(newton_lift(f, {0, 0, 0}, 8), NoLiftableSubsystem);
  CHECK_THROWS_AS(newton_lift({x(0, 8) - c(1, 8), x(1, 8), x(2, 8)}, {0, 0, 0}, 8), std::invalid_argument);
}

TEST_CASE("quadratic convergence and subsystem order") {
  std::mt19937_64 rng(12);
  int lifted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    // Random systems built around a known root z.
    const int m = 32;
    const std::vector<std::uint64_t> z = {rng() & mask_bits(m), rng() & mask_bits(m), rng() & mask_bits(m)};
    std::vector<MPoly> f;
    for (int i = 0; i < 4; ++i) {
      MPoly p(3, m);
      for (int t = 0; t < 4; ++t) {
        Monomial mono;
        for (int v = 0; v < 3; ++v) mono.e[v] = static_cast<std::uint8_t>(rng() % 2);
        p.add_term(mono, rng());
      }
      p.add_term(Monomial{}, 0 - eval(p, z));
      f.push_back(p);
    }
    const std::vector<std::uint8_t> x0 = {static_cast<std::uint8_t>(z[0] & 1), static_cast<std::uint8_t>(z[1] & 1),
                                          static_cast<std::uint8_t>(z[2] & 1)};
    NewtonLift r;
    try {
      r = newton_lift(f, x0, m);
    } catch (const NoLiftableSubsystem&) {
      continue;
    }
    ++lifted;
    CHECK(r.steps == 6);
    for (int k = 1; k <= r.steps; ++k) CHECK(r.residual_valuations[k] >= std::min(1 << k, m));
    for (std::size_t s : r.subsystem) CHECK(eval(f[s], r.point) == 0);
    // The unique lift of z mod 2 for this subsystem is z itself.
    CHECK(r.point == z);
  }
  CHECK(lifted > 50);
}
