#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "harnack/error.hpp"

namespace harnack {

using cplx = std::complex<double>;
using Homogeneous = std::array<cplx, 3>;

inline double norm_sq(const Homogeneous& x) {
  return std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]);
}

/// A point of P^2 stored in the affine chart of its largest coordinate.
/// Chart 0, 1, 2 normalizes x, y, z respectively to 1.
class ProjectivePoint {
 public:
  ProjectivePoint(cplx x, cplx y, cplx z) {
    Homogeneous raw{x, y, z};
    int c = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(raw[k]) > std::abs(raw[c])) c = k;
    if (!(std::abs(raw[c]) > 0.0) || !std::isfinite(std::abs(raw[c])))
      throw config_error("projective point needs a finite nonzero coordinate");
    chart_ = c;
    for (int k = 0; k < 3; ++k) coords_[k] = (k == c) ? cplx(1.0) : raw[k] / raw[c];
  }

  explicit ProjectivePoint(const Homogeneous& h) : ProjectivePoint(h[0], h[1], h[2]) {}

  static ProjectivePoint real(double x, double y, double z) { return {x, y, z}; }

  /// Coordinates normalized so that coords()[chart()] == 1.
  const Homogeneous& coords() const { return coords_; }
  int chart() const { return chart_; }

  /// Representative with coordinate `c` equal to one.
  Homogeneous in_chart(int c) const {
    if (std::abs(coords_[c]) == 0.0)
      throw config_error("point does not lie in the requested chart");
    Homogeneous out;
    for (int k = 0; k < 3; ++k) out[k] = coords_[k] / coords_[c];
    out[c] = 1.0;
    return out;
  }

  /// Affine coordinates (u, v) in chart `c`: the two remaining coordinates in
  /// increasing index order.
  std::pair<cplx, cplx> affine(int c) const {
    auto h = in_chart(c);
    return {h[c == 0 ? 1 : 0], h[c == 2 ? 1 : 2]};
  }

  Homogeneous unit() const {
    double r = std::sqrt(norm_sq(coords_));
    return {coords_[0] / r, coords_[1] / r, coords_[2] / r};
  }

  bool is_real(double tol = 0.0) const {
    return std::abs(coords_[0].imag()) <= tol && std::abs(coords_[1].imag()) <= tol &&
           std::abs(coords_[2].imag()) <= tol;
  }

 private:
  Homogeneous coords_{};
  int chart_ = 2;
};

/// Builds the homogeneous vector of chart `c` with affine coordinates (u, v).
inline Homogeneous from_affine(int c, cplx u, cplx v) {
  Homogeneous h;
  int a = c == 0 ? 1 : 0;
  int b = c == 2 ? 1 : 2;
  h[c] = 1.0;
  h[a] = u;
  h[b] = v;
  return h;
}

/// |<x, y>|^2 / (|x|^2 |y|^2): squared cosine of the Fubini-Study distance.
inline double cos2_distance(const Homogeneous& x, const Homogeneous& y) {
  cplx ip = 0.0;
  for (int k = 0; k < 3; ++k) ip += x[k] * std::conj(y[k]);
  return std::norm(ip) / (norm_sq(x) * norm_sq(y));
}

}  // namespace harnack
