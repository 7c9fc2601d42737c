#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "harnack/ensemble/monomial_basis.hpp"
#include "harnack/ensemble/polynomial.hpp"
#include "harnack/error.hpp"
#include "harnack/topology/bernstein.hpp"
#include "harnack/topology/interval.hpp"

namespace harnack {

// Cube-sphere: face f < 3 is the square {X_f = 1} of the cube [-1,1]^3 with
// coordinates (u, v) in [-1,1]^2, face f + 3 its antipode.  The sphere point of
// a face point is the ray through A times the cube point, where A is a fixed
// generic matrix; signs of a homogeneous polynomial are constant along rays,
// so counting zero components on the cube counts them on S^2.  The tilt keeps
// dyadic subdivision lines off the coordinate planes that classical curves
// tend to be symmetric about.

inline constexpr Matrix3 kCubeFrame{{{1.0, 0.0731, -0.0413}, {-0.0627, 1.0, 0.0519}, {0.0383, -0.0571, 1.0}}};

inline constexpr int kFaces = 6;

/// Cube point of face f at (u, v).
inline std::array<double, 3> cube_point(int face, double u, double v) {
  std::array<double, 3> p{};
  switch (face % 3) {
    case 0: p = {1.0, u, v}; break;
    case 1: p = {v, 1.0, u}; break;
    default: p = {u, v, 1.0}; break;
  }
  if (face >= 3)
    for (double& x : p) x = -x;
  return p;
}

/// Inverse of cube_point on face f (p must lie on that face).
inline std::array<double, 2> face_coords(int face, const std::array<double, 3>& p) {
  double s = face >= 3 ? -1.0 : 1.0;
  switch (face % 3) {
    case 0: return {s * p[1], s * p[2]};
    case 1: return {s * p[2], s * p[0]};
    default: return {s * p[0], s * p[1]};
  }
}

/// S^2 point of a face point (unnormalized).
inline std::array<double, 3> sphere_direction(int face, double u, double v, const Matrix3& a = kCubeFrame) {
  auto c = cube_point(face, u, v);
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) out[k] = a[k][0] * c[0] + a[k][1] * c[1] + a[k][2] * c[2];
  return out;
}

/// Dyadic box of a face: (u, v) in [-1 + 2i/2^d, -1 + 2(i+1)/2^d] x (same in j).
struct SphereCell {
  int face = 0;
  int depth = 0;
  std::uint32_t i = 0, j = 0;

  static constexpr int kMaxDepth = 20;

  double u_lo() const { return -1.0 + std::ldexp(2.0 * i, -depth); }
  double u_hi() const { return -1.0 + std::ldexp(2.0 * (i + 1), -depth); }
  double v_lo() const { return -1.0 + std::ldexp(2.0 * j, -depth); }
  double v_hi() const { return -1.0 + std::ldexp(2.0 * (j + 1), -depth); }
  double width() const { return std::ldexp(2.0, -depth); }

  /// Children in BernsteinNet::quarter() order.
  std::array<SphereCell, 4> children() const {
    std::array<SphereCell, 4> c;
    for (int k = 0; k < 4; ++k) c[k] = {face, depth + 1, 2 * i + (k >> 1), 2 * j + (k & 1)};
    return c;
  }

  SphereCell antipode() const { return {(face + 3) % kFaces, depth, i, j}; }

  std::uint64_t key() const {
    return (std::uint64_t(face) << 61) | (std::uint64_t(depth) << 56) | (std::uint64_t(i) << 28) | j;
  }

  bool operator==(const SphereCell&) const = default;
};

/// Interval power coefficients c[p][q] of (u, v) -> P(A cube_point(face, u, v)).
inline std::vector<std::vector<Interval>> face_polynomial(const MonomialBasis& basis, std::span<const double> mono,
                                                          int face, const Matrix3& a = kCubeFrame) {
  // A composed with cube_point as a linear map of (1, u, v); entries are exact
  Matrix3 m{};
  double s = face >= 3 ? -1.0 : 1.0;
  auto e0 = cube_point(face % 3, 0.0, 0.0);
  auto eu = cube_point(face % 3, 1.0, 0.0);
  auto ev = cube_point(face % 3, 0.0, 1.0);
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 3; ++r) {
      m[k][0] += a[k][r] * s * e0[r];
      m[k][1] += a[k][r] * s * (eu[r] - e0[r]);
      m[k][2] += a[k][r] * s * (ev[r] - e0[r]);
    }
  auto sub = substitute_linear<Interval>(basis, mono, m);
  const int n = basis.degree();
  std::vector<std::vector<Interval>> c(n + 1, std::vector<Interval>(n + 1, Interval(0.0)));
  for (int a0 = 0; a0 <= n; ++a0)
    for (int b = 0; b <= n - a0; ++b) c[b][n - a0 - b] = sub[monomial_index(n, a0, b)];
  return c;
}

}  // namespace harnack
