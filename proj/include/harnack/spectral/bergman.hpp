#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "harnack/ensemble/orthonormal_basis.hpp"
#include "harnack/geometry/projective_point.hpp"
#include "harnack/geometry/quadrature.hpp"

namespace harnack {

/// k_n(x) = sum_j |S_j(x)|^2_{h^n}.
inline double bergman_function(const OrthonormalBasis& onb, const Homogeneous& x) {
  const int d = onb.dimension();
  std::vector<cplx> m(d);
  onb.basis.evaluate<cplx>(x, m);
  Eigen::Map<const Eigen::VectorXcd> mv(m.data(), d);
  Eigen::VectorXcd s = onb.transform.transpose().cast<cplx>() * mv;
  return s.squaredNorm() * std::exp(-2.0 * onb.degree() * onb.weight.log_norm(x));
}

inline double bergman_function(const OrthonormalBasis& onb, const ProjectivePoint& p) {
  return bergman_function(onb, p.coords());
}

/// k_n at every node of a rule, and its quadrature integral.
struct BergmanEvaluation {
  int degree = 0;
  std::vector<double> values;
  double total = 0.0;
};

inline BergmanEvaluation bergman_evaluation(const OrthonormalBasis& onb, const QuadratureRule& rule) {
  const int d = onb.dimension();
  const int n = onb.degree();
  constexpr std::size_t kBlock = 2048;
  BergmanEvaluation out;
  out.degree = n;
  out.values.resize(rule.size());
  Eigen::MatrixXd vr(kBlock, d), vi(kBlock, d);
  std::vector<cplx> m(d);
  CompensatedSum acc;
  for (std::size_t start = 0; start < rule.size(); start += kBlock) {
    std::size_t len = std::min(kBlock, rule.size() - start);
    for (std::size_t r = 0; r < len; ++r) {
      const Homogeneous& x = rule.unit_nodes[start + r];
      onb.basis.evaluate<cplx>(x, m);
      double scale = std::exp(-n * onb.weight.log_norm(x));
      for (int j = 0; j < d; ++j) {
        vr(r, j) = m[j].real() * scale;
        vi(r, j) = m[j].imag() * scale;
      }
    }
    Eigen::MatrixXd sr = vr.topRows(len) * onb.transform;
    Eigen::MatrixXd si = vi.topRows(len) * onb.transform;
    for (std::size_t r = 0; r < len; ++r) {
      double k = sr.row(r).squaredNorm() + si.row(r).squaredNorm();
      out.values[start + r] = k;
      acc.add(rule.weights[start + r] * k);
    }
  }
  out.total = acc.value();
  return out;
}

/// Integral of k_n over `rule`, recomputed on a rule of twice the order (capped
/// at the node budget) to detect under-resolution.
struct DensityCheck {
  int degree = 0;
  int dimension = 0;
  double value = 0.0;
  int order = 0;
  double refined_value = 0.0;
  int refined_order = 0;
  bool under_resolved = false;  // |value - refined_value| > 1e-8

  double residual() const { return value - dimension; }
};

inline DensityCheck density_check(const OrthonormalBasis& onb, const QuadratureRule& rule, bool refine = true) {
  DensityCheck c;
  c.degree = onb.degree();
  c.dimension = onb.dimension();
  c.order = rule.order;
  c.value = bergman_evaluation(onb, rule).total;
  c.refined_value = c.value;
  c.refined_order = rule.order;
  if (refine) {
    int k = std::min(2 * rule.order, max_quadrature_order());
    if (k > rule.order) {
      c.refined_order = k;
      c.refined_value = bergman_evaluation(onb, build_quadrature(k)).total;
      c.under_resolved = std::abs(c.value - c.refined_value) > 1e-8;
    }
  }
  return c;
}

/// n^-2 k_n at each point (`scaled`), with k_n / d_n (`normalized`) alongside.
/// The latter is the finite-n comparison against the curvature density
/// relative to Fubini-Study, which is 1 for the Fubini-Study weight at any n.
struct BergmanProfile {
  int degree = 0;
  std::vector<double> scaled;
  std::vector<double> normalized;
};

inline BergmanProfile bergman_density_profile(const OrthonormalBasis& onb, const std::vector<ProjectivePoint>& points) {
  BergmanProfile out;
  out.degree = onb.degree();
  const double n2 = double(onb.degree()) * onb.degree();
  for (const auto& p : points) {
    double k = bergman_function(onb, p);
    out.scaled.push_back(k / n2);
    out.normalized.push_back(k / onb.dimension());
  }
  return out;
}

inline BergmanProfile bergman_density_profile(const Weight& w, int n, const std::vector<ProjectivePoint>& points) {
  return bergman_density_profile(make_orthonormal_basis(n, w), points);
}

}  // namespace harnack
