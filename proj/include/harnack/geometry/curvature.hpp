#pragma once

#include <cmath>
#include <string>

#include "harnack/error.hpp"
#include "harnack/geometry/projective_point.hpp"
#include "harnack/geometry/weight.hpp"

namespace harnack {

inline constexpr double kDefaultCurvatureStep = 1e-4;

namespace detail {

struct ComplexHessian {
  double h11, h22;
  cplx h12;
  double det() const { return h11 * h22 - std::norm(h12); }
  bool positive_definite() const { return h11 > 0.0 && det() > 0.0; }
};

// Complex Hessian d^2 phi / dz_j dconj(z_k) of the chart weight at (u, v), by
// central differences in the real coordinates u = x1 + i y1, v = x2 + i y2.
inline ComplexHessian complex_hessian(const Weight& w, int chart, cplx u, cplx v, double h) {
  auto phi = [&](double dx1, double dy1, double dx2, double dy2) {
    return w.log_norm(from_affine(chart, u + cplx(dx1, dy1), v + cplx(dx2, dy2)));
  };
  const double f0 = phi(0, 0, 0, 0);
  const double h2 = h * h;
  auto second = [&](double a1, double b1, double a2, double b2) {
    return (phi(a1 * h, b1 * h, a2 * h, b2 * h) - 2.0 * f0 + phi(-a1 * h, -b1 * h, -a2 * h, -b2 * h)) / h2;
  };
  auto mixed = [&](int i, int j) {
    double e[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    auto at = [&](double si, double sj) {
      double d[4];
      for (int k = 0; k < 4; ++k) d[k] = (si * e[i][k] + sj * e[j][k]) * h;
      return phi(d[0], d[1], d[2], d[3]);
    };
    return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h2);
  };
  // indices: 0 = x1, 1 = y1, 2 = x2, 3 = y2
  double lap1 = second(1, 0, 0, 0) + second(0, 1, 0, 0);
  double lap2 = second(0, 0, 1, 0) + second(0, 0, 0, 1);
  double re12 = mixed(0, 2) + mixed(1, 3);
  double im12 = mixed(0, 3) - mixed(1, 2);
  return {0.25 * lap1, 0.25 * lap2, 0.25 * cplx(re12, im12)};
}

}  // namespace detail

/// det(dd^c phi) with respect to dV: the ratio of the complex Hessian
/// determinant of the chart weight to that of the Fubini-Study weight,
/// (1/4)(1 + |u|^2 + |v|^2)^-3.  Identically 1 for fubini-study.
///
/// Throws numerical_error when halving the step moves the value by more than
/// 1e-4 (relative to max(1, |value|)).
inline double curvature_density(const Weight& w, const ProjectivePoint& p,
                                double step = kDefaultCurvatureStep) {
  if (!(step > 0.0)) throw config_error("curvature step must be > 0");
  const int c = p.chart();
  auto [u, v] = p.affine(c);
  double fs_det = 0.25 / std::pow(1.0 + std::norm(u) + std::norm(v), 3);
  double d1 = detail::complex_hessian(w, c, u, v, step).det() / fs_det;
  double d2 = detail::complex_hessian(w, c, u, v, 0.5 * step).det() / fs_det;
  if (!std::isfinite(d1) || std::abs(d1 - d2) > 1e-4 * std::max(1.0, std::abs(d1)))
    throw numerical_error("curvature finite differences disagree under step halving (" +
                          std::to_string(d1) + " vs " + std::to_string(d2) + ")");
  return d1;
}

/// Whether dd^c phi is positive definite at p (p in X_h^+).  The density
/// alone does not decide this: two negative eigenvalues give det > 0.
inline bool curvature_positive(const Weight& w, const ProjectivePoint& p,
                               double step = kDefaultCurvatureStep) {
  if (!(step > 0.0)) throw config_error("curvature step must be > 0");
  const int c = p.chart();
  auto [u, v] = p.affine(c);
  return detail::complex_hessian(w, c, u, v, step).positive_definite();
}

}  // namespace harnack
