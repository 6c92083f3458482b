#include "padicpose/mpoly.hpp"

#include "padicpose/errors.hpp"

#include <algorithm>
#include <sstream>

namespace padicpose {

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
  return r;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(o.e[i] - e[i]);
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(e[i], o.e[i]);
  return r;
}

bool degrevlex_greater(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

MPoly::MPoly(int nvars, int prec) : nvars_(nvars), prec_(prec) {
  if (nvars < 1 || nvars > kMaxVars) throw ShapeMismatch("nvars must lie in [1, 4]");
  if (prec < 1 || prec > kMaxPrecision) throw std::invalid_argument("precision out of range");
}

MPoly MPoly::constant(std::uint64_t c, int nvars, int prec) {
  MPoly p(nvars, prec);
  p.add_term(Monomial{}, c);
  return p;
}

MPoly MPoly::variable(int index, int nvars, int prec) {
  if (index < 0 || index >= nvars) throw ShapeMismatch("variable index out of range");
  Monomial mono;
  mono.e[index] = 1;
  return term(mono, 1, nvars, prec);
}

MPoly MPoly::term(const Monomial& mono, std::uint64_t c, int nvars, int prec) {
  MPoly p(nvars, prec);
  p.add_term(mono, c);
  return p;
}

int MPoly::degree() const {
  int d = -1;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
  return d;
}

bool MPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.degree();
  for (const auto& [mono, c] : terms_)
    if (mono.degree() != d) return false;
  return true;
}

const Monomial& MPoly::leading_monomial() const {
  if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading monomial");
  return terms_.begin()->first;
}

std::uint64_t MPoly::leading_coefficient() const {
  if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading coefficient");
  return terms_.begin()->second;
}

std::uint64_t MPoly::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? 0 : it->second;
}

void MPoly::add_term(const Monomial& mono, std::uint64_t c) {
  for (int i = nvars_; i < kMaxVars; ++i)
    if (mono.e[i] != 0) throw ShapeMismatch("exponent on a variable beyond nvars");
  c &= mask_bits(prec_);
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(mono, c);
  if (inserted) return;
  it->second = (it->second + c) & mask_bits(prec_);
  if (it->second == 0) terms_.erase(it);
}

MPoly MPoly::truncate(int prec) const {
  MPoly r(nvars_, std::min(prec, prec_));
  for (const auto& [mono, c] : terms_) r.add_term(mono, c);
  return r;
}

static void check_compatible(const MPoly& a, const MPoly& b) {
  if (a.nvars() != b.nvars()) throw ShapeMismatch("polynomials differ in nvars");
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(*this, o);
  MPoly r = truncate(o.prec_);
  for (const auto& [mono, c] : o.terms_) r.add_term(mono, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(*this, o);
  MPoly r(nvars_, std::min(prec_, o.prec_));
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(nvars_, prec_);
  for (const auto& [mono, c] : terms_) r.add_term(mono, 0 - c);
  return r;
}

MPoly MPoly::scaled(std::uint64_t s) const {
  MPoly r(nvars_, prec_);
  for (const auto& [mono, c] : terms_) r.add_term(mono, c * s);
  return r;
}

MPoly MPoly::times_monomial(const Monomial& mono, std::uint64_t s) const {
  MPoly r(nvars_, prec_);
  for (const auto& [m, c] : terms_) r.add_term(m * mono, c * s);
  return r;
}

bool MPoly::operator==(const MPoly& o) const {
  return nvars_ == o.nvars_ && prec_ == o.prec_ && terms_ == o.terms_;
}

std::string MPoly::to_string() const {
  std::ostringstream os;
  if (terms_.empty()) os << "0";
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 0; i < nvars_; ++i) {
      if (mono.e[i] == 0) continue;
      os << "*x" << (i + 1);
      if (mono.e[i] > 1) os << "^" << int(mono.e[i]);
    }
  }
  os << " (mod 2^" << prec_ << ")";
  return os.str();
}

std::uint64_t eval(const MPoly& f, const std::vector<std::uint64_t>& point) {
  if (static_cast<int>(point.size()) != f.nvars()) throw ShapeMismatch("point length differs from nvars");
  std::uint64_t s = 0;
  for (const auto& [mono, c] : f.terms()) {
    std::uint64_t t = c;
    for (int i = 0; i < f.nvars(); ++i)
      for (int k = 0; k < mono.e[i]; ++k) t *= point[i];
    s += t;
  }
  return s & mask_bits(f.precision());
}

PadicInt eval(const MPoly& f, const std::vector<PadicInt>& point) {
  int prec = f.precision();
  std::vector<std::uint64_t> r;
  for (const auto& a : point) {
    prec = std::min(prec, a.precision());
    r.push_back(a.residue());
  }
  return PadicInt(eval(f, r), prec);
}

std::vector<MPoly> gradient(const MPoly& f) {
  std::vector<MPoly> g(f.nvars(), MPoly(f.nvars(), f.precision()));
  for (const auto& [mono, c] : f.terms())
    for (int i = 0; i < f.nvars(); ++i) {
      if (mono.e[i] == 0) continue;
      Monomial d = mono;
      --d.e[i];
      g[i].add_term(d, c * mono.e[i]);
    }
  return g;
}

MPoly reduce_mod2(const MPoly& f) { return f.truncate(1); }

Normalized content_normalize(const MPoly& f) {
  if (f.is_zero()) throw ZeroPolynomial("content of the zero polynomial is undefined");
  int s = kValInf;
  for (const auto& [mono, c] : f.terms()) s = std::min(s, val_bits(c));
  MPoly r(f.nvars(), f.precision() - s);
  for (const auto& [mono, c] : f.terms()) r.add_term(mono, c >> s);
  return {r, s};
}

MPoly specialize(const MPoly& f, int var, std::uint64_t value) {
  if (var < 0 || var >= f.nvars()) throw ShapeMismatch("specialized variable out of range");
  if (f.nvars() == 1) throw ShapeMismatch("cannot specialize the last variable");
  MPoly r(f.nvars() - 1, f.precision());
  for (const auto& [mono, c] : f.terms()) {
    std::uint64_t t = c;
    for (int k = 0; k < mono.e[var]; ++k) t *= value;
    Monomial m;
    for (int i = 0, j = 0; i < f.nvars(); ++i)
      if (i != var) m.e[j++] = mono.e[i];
    r.add_term(m, t);
  }
  return r;
}

}  // namespace padicpose
