#include "padicpose/modmat.hpp"

#include "padicpose/errors.hpp"
#include "padicpose/padic.hpp"

namespace padicpose {

Mat3 mat_mask(const Mat3& a, int m) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r[i] = a[i] & mask_bits(m);
  return r;
}

Mat3 mat_identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Mat3 mat_add(const Mat3& a, const Mat3& b, int m) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r[i] = (a[i] + b[i]) & mask_bits(m);
  return r;
}

Mat3 mat_sub(const Mat3& a, const Mat3& b, int m) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r[i] = (a[i] - b[i]) & mask_bits(m);
  return r;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b, int m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::uint64_t s = 0;
      for (int k = 0; k < 3; ++k) s += a[3 * i + k] * b[3 * k + j];
      r[3 * i + j] = s & mask_bits(m);
    }
  return r;
}

Mat3 mat_scale(const Mat3& a, std::uint64_t s, int m) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r[i] = (a[i] * s) & mask_bits(m);
  return r;
}

Mat3 mat_transpose(const Mat3& a) {
  return {a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]};
}

Mat3 mat_adjugate(const Mat3& a, int m) {
  Mat3 r = {a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
            a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
            a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3]};
  return mat_mask(r, m);
}

std::uint64_t mat_det(const Mat3& a, int m) {
  std::uint64_t d = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
                    a[2] * (a[3] * a[7] - a[4] * a[6]);
  return d & mask_bits(m);
}

std::uint64_t mat_trace(const Mat3& a, int m) { return (a[0] + a[4] + a[8]) & mask_bits(m); }

Mat3 mat_inverse(const Mat3& a, int m) {
  std::uint64_t d = mat_det(a, m);
  if ((d & 1) == 0) throw NotAUnit("matrix determinant is even");
  return mat_scale(mat_adjugate(a, m), inv_odd64(d), m);
}

Mat3 cross_matrix(const Vec3& t, int m) {
  Mat3 r = {0, 0 - t[2], t[1], t[2], 0, 0 - t[0], 0 - t[1], t[0], 0};
  return mat_mask(r, m);
}

bool mat_is_zero(const Mat3& a, int m) {
  for (auto v : a)
    if (v & mask_bits(m)) return false;
  return true;
}

std::uint64_t bilinear(const Vec3& u, const Mat3& a, const Vec3& v, int m) {
  std::uint64_t s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += u[i] * a[3 * i + j] * v[j];
  return s & mask_bits(m);
}

}  // namespace padicpose
