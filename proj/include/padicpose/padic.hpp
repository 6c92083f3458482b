#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace padicpose {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxPrecision = 64;
// Valuation of a residue that is zero at the working precision.
inline constexpr int kValInf = std::numeric_limits<int>::max();

inline constexpr std::uint64_t mask_bits(int m) {
  return m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
}

// Index of the lowest set bit, or kValInf for zero.
inline int val_bits(std::uint64_t r) {
  return r == 0 ? kValInf : __builtin_ctzll(r);
}

// Inverse of an odd residue modulo 2^64 (Newton iteration on the 2-adic inverse).
inline std::uint64_t inv_odd64(std::uint64_t a) {
  std::uint64_t x = a;  // correct to 3 bits for odd a
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x;
}

// A 2-adic integer known modulo 2^prec.
class PadicInt {
 public:
  PadicInt() = default;
  PadicInt(std::uint64_t residue, int prec);

  std::uint64_t residue() const { return residue_; }
  int precision() const { return prec_; }
  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const { return (residue_ & 1) != 0; }

  // Returns the same value restricted to fewer digits.
  PadicInt truncate(int prec) const;

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  bool operator==(const PadicInt& o) const = default;

  std::string to_string() const;

 private:
  std::uint64_t residue_ = 0;
  int prec_ = 1;
};

int val2(const PadicInt& a);
PadicInt inv_unit(const PadicInt& a);

// Element of the unramified degree-n extension, as m digit tuples of n bits.
class UnramifiedElement {
 public:
  UnramifiedElement() = default;
  UnramifiedElement(int dim, std::vector<std::uint64_t> digits);

  int dim() const { return dim_; }
  int levels() const { return static_cast<int>(digits_.size()); }
  std::uint64_t digit(int level) const { return digits_[level]; }
  const std::vector<std::uint64_t>& digits() const { return digits_; }

  // First level with a nonzero digit, kValInf if none.
  int valuation() const;
  Rational norm() const;
  bool operator==(const UnramifiedElement& o) const = default;

 private:
  int dim_ = 0;
  std::vector<std::uint64_t> digits_;
};

UnramifiedElement encode_vector(const std::vector<PadicInt>& v);
UnramifiedElement encode_residues(const std::vector<std::uint64_t>& v, int prec);
std::vector<PadicInt> decode_vector(const UnramifiedElement& x);

// Number of leading digit levels on which x and y agree, in [0, levels].
int agreement_depth(const UnramifiedElement& x, const UnramifiedElement& y);
// 2^-agreement, or 0 below resolution.
Rational dist_K(const UnramifiedElement& x, const UnramifiedElement& y);

// Image grid coordinate with `resolution` bits.
struct GridCoord {
  std::uint64_t value = 0;
  int resolution = 1;
};

PadicInt grid_encode(const GridCoord& c);
GridCoord grid_decode(const PadicInt& a);
Rational monna(const PadicInt& a);

Rational pow2(long e);
Rational ball_measure(int depth, int dim);

}  // namespace padicpose
