#include "padicpose/padic.hpp"

#include "padicpose/errors.hpp"

namespace padicpose {

namespace {

void check_precision(int prec) {
  if (prec < 1 || prec > kMaxPrecision)
    throw std::invalid_argument("precision out of range: " + std::to_string(prec));
}

}  // namespace

PadicInt::PadicInt(std::uint64_t residue, int prec) : residue_(residue & mask_bits(prec)), prec_(prec) {
  check_precision(prec);
}

PadicInt PadicInt::truncate(int prec) const {
  if (prec > prec_) throw MixedPrecision("cannot extend a residue to higher precision");
  return PadicInt(residue_, prec);
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
  return PadicInt(residue_ + o.residue_, std::min(prec_, o.prec_));
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  return PadicInt(residue_ - o.residue_, std::min(prec_, o.prec_));
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  return PadicInt(residue_ * o.residue_, std::min(prec_, o.prec_));
}

PadicInt PadicInt::operator-() const { return PadicInt(0 - residue_, prec_); }

std::string PadicInt::to_string() const {
  return std::to_string(residue_) + " mod 2^" + std::to_string(prec_);
}

int val2(const PadicInt& a) { return val_bits(a.residue()); }

PadicInt inv_unit(const PadicInt& a) {
  if (!a.is_unit()) throw NotAUnit("residue " + std::to_string(a.residue()) + " is even");
  return PadicInt(inv_odd64(a.residue()), a.precision());
}

UnramifiedElement::UnramifiedElement(int dim, std::vector<std::uint64_t> digits)
    : dim_(dim), digits_(std::move(digits)) {
  if (dim < 1 || dim > 64) throw ShapeMismatch("extension degree must lie in [1, 64]");
  for (auto d : digits_)
    if (d & ~mask_bits(dim)) throw ShapeMismatch("digit tuple wider than the extension degree");
}

int UnramifiedElement::valuation() const {
  for (int l = 0; l < levels(); ++l)
    if (digits_[l] != 0) return l;
  return kValInf;
}

Rational UnramifiedElement::norm() const {
  int v = valuation();
  return v == kValInf ? Rational(0) : pow2(-v);
}

UnramifiedElement encode_residues(const std::vector<std::uint64_t>& v, int prec) {
  check_precision(prec);
  std::vector<std::uint64_t> digits(prec, 0);
  for (int l = 0; l < prec; ++l)
    for (std::size_t i = 0; i < v.size(); ++i) digits[l] |= ((v[i] >> l) & 1) << i;
  return UnramifiedElement(static_cast<int>(v.size()), std::move(digits));
}

UnramifiedElement encode_vector(const std::vector<PadicInt>& v) {
  if (v.empty()) throw ShapeMismatch("cannot encode an empty vector");
  std::vector<std::uint64_t> r;
  r.reserve(v.size());
  for (const auto& a : v) {
    if (a.precision() != v.front().precision())
      throw MixedPrecision("all coordinates must share one precision");
    r.push_back(a.residue());
  }
  return encode_residues(r, v.front().precision());
}

std::vector<PadicInt> decode_vector(const UnramifiedElement& x) {
  std::vector<std::uint64_t> r(x.dim(), 0);
  for (int l = 0; l < x.levels(); ++l)
    for (int i = 0; i < x.dim(); ++i) r[i] |= ((x.digit(l) >> i) & 1) << l;
  std::vector<PadicInt> out;
  out.reserve(r.size());
  for (auto v : r) out.emplace_back(v, x.levels());
  return out;
}

int agreement_depth(const UnramifiedElement& x, const UnramifiedElement& y) {
  if (x.dim() != y.dim() || x.levels() != y.levels())
    throw ShapeMismatch("elements differ in degree or digit count");
  for (int l = 0; l < x.levels(); ++l)
    if (x.digit(l) != y.digit(l)) return l;
  return x.levels();
}

Rational dist_K(const UnramifiedElement& x, const UnramifiedElement& y) {
  int d = agreement_depth(x, y);
  return d == x.levels() ? Rational(0) : pow2(-d);
}

PadicInt grid_encode(const GridCoord& c) {
  check_precision(c.resolution);
  if (c.value > mask_bits(c.resolution)) throw OutOfRange("grid value exceeds resolution");
  std::uint64_t r = 0;
  for (int nu = 0; nu < c.resolution; ++nu) r |= ((c.value >> (c.resolution - 1 - nu)) & 1) << nu;
  return PadicInt(r, c.resolution);
}

GridCoord grid_decode(const PadicInt& a) {
  GridCoord c{0, a.precision()};
  for (int nu = 0; nu < a.precision(); ++nu)
    c.value |= ((a.residue() >> nu) & 1) << (a.precision() - 1 - nu);
  return c;
}

Rational monna(const PadicInt& a) {
  Rational s = 0;
  for (int nu = 0; nu < a.precision(); ++nu)
    if ((a.residue() >> nu) & 1) s += pow2(-(nu + 1));
  return s;
}

Rational pow2(long e) {
  BigInt p = 1;
  p <<= static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

Rational ball_measure(int depth, int dim) {
  if (depth < 0) throw std::invalid_argument("ball depth must be nonnegative");
  return pow2(-static_cast<long>(depth) * dim);
}

}  // namespace padicpose
