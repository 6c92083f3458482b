#pragma once

#include <array>
#include <cstdint>

namespace padicpose {

// Row-major 3x3 matrices and 3-vectors of residues modulo 2^m.
using Vec3 = std::array<std::uint64_t, 3>;
using Mat3 = std::array<std::uint64_t, 9>;

Mat3 mat_mask(const Mat3& a, int m);
Mat3 mat_identity();
Mat3 mat_add(const Mat3& a, const Mat3& b, int m);
Mat3 mat_sub(const Mat3& a, const Mat3& b, int m);
Mat3 mat_mul(const Mat3& a, const Mat3& b, int m);
Mat3 mat_scale(const Mat3& a, std::uint64_t s, int m);
Mat3 mat_transpose(const Mat3& a);
Mat3 mat_adjugate(const Mat3& a, int m);
std::uint64_t mat_det(const Mat3& a, int m);
std::uint64_t mat_trace(const Mat3& a, int m);
// Inverse of a matrix with odd determinant; throws NotAUnit otherwise.
Mat3 mat_inverse(const Mat3& a, int m);
// Cross-product matrix [t]_x with [t]_x v = t x v.
Mat3 cross_matrix(const Vec3& t, int m);
bool mat_is_zero(const Mat3& a, int m);

// u^T A v modulo 2^m.
std::uint64_t bilinear(const Vec3& u, const Mat3& a, const Vec3& v, int m);

}  // namespace padicpose
