#pragma once

#include "padicpose/mpoly.hpp"

#include <cstdint>
#include <vector>

namespace padicpose {

// Reduced degrevlex Groebner basis of an ideal of F2[x1..xn].
struct GroebnerBasis {
  int nvars = 0;
  std::vector<MPoly> generators;  // ascending by leading monomial

  bool is_unit_ideal() const;
  bool is_zero_ideal() const { return generators.empty(); }
};

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& divisors);
MPoly normal_form(const MPoly& f, const GroebnerBasis& b);
MPoly s_polynomial(const MPoly& f, const MPoly& g);

// Reduces every input mod 2 first.
GroebnerBasis buchberger(const std::vector<MPoly>& f);

// Finitely many standard monomials; the empty variety counts as zero-dimensional.
bool is_zero_dimensional(const GroebnerBasis& b);

using F2Point = std::vector<std::uint8_t>;

std::vector<F2Point> f2_points(const std::vector<MPoly>& f, int nvars);
// One representative per point of P^{n-1}(F2), in increasing binary order.
std::vector<F2Point> projective_f2_points(const std::vector<MPoly>& f, int nvars);

}  // namespace padicpose
