#pragma once

#include "padicpose/padic.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace padicpose {

inline constexpr int kMaxVars = 4;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  // Quotient o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;
};

// Graded reverse lexicographic order, strict "greater than".
bool degrevlex_greater(const Monomial& a, const Monomial& b);

struct DegrevlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_greater(a, b); }
};

// Sparse polynomial in nvars variables over Z/2^prec. Precision 1 is F2.
class MPoly {
 public:
  using Terms = std::map<Monomial, std::uint64_t, DegrevlexDesc>;

  MPoly() = default;
  MPoly(int nvars, int prec);

  static MPoly constant(std::uint64_t c, int nvars, int prec);
  static MPoly variable(int index, int nvars, int prec);
  static MPoly term(const Monomial& mono, std::uint64_t c, int nvars, int prec);

  int nvars() const { return nvars_; }
  int precision() const { return prec_; }
  bool is_f2() const { return prec_ == 1; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  const Monomial& leading_monomial() const;
  std::uint64_t leading_coefficient() const;
  std::uint64_t coefficient(const Monomial& mono) const;

  // Adds c * mono in place.
  void add_term(const Monomial& mono, std::uint64_t c);
  MPoly truncate(int prec) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly scaled(std::uint64_t c) const;
  MPoly times_monomial(const Monomial& mono, std::uint64_t c) const;
  bool operator==(const MPoly& o) const;

  // Canonical text: descending degrevlex terms, explicit coefficients.
  std::string to_string() const;

 private:
  int nvars_ = kMaxVars;
  int prec_ = 1;
  Terms terms_;
};

std::uint64_t eval(const MPoly& f, const std::vector<std::uint64_t>& point);
PadicInt eval(const MPoly& f, const std::vector<PadicInt>& point);
std::vector<MPoly> gradient(const MPoly& f);
MPoly reduce_mod2(const MPoly& f);

struct Normalized {
  MPoly poly;
  int shift = 0;
};
Normalized content_normalize(const MPoly& f);

// Substitutes x_var = value and renumbers the remaining variables in order.
MPoly specialize(const MPoly& f, int var, std::uint64_t value = 1);

}  // namespace padicpose
