#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "harnack/ensemble/section.hpp"
#include "harnack/spectral/test_functions.hpp"
#include "harnack/spectral/toeplitz.hpp"

namespace harnack {

/// (1/d_n) integral of phi |s|^2_{h^n} dV, by direct quadrature of the section.
inline double mass_functional(const SectionSample& s, const OrthonormalBasis& onb, const TestFunction& phi,
                              const QuadratureRule& rule) {
  auto mono = monomial_coefficients(s, onb);
  const int n = onb.degree();
  CompensatedSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Homogeneous& x = rule.unit_nodes[i];
    double v = std::norm(onb.basis.evaluate_polynomial<cplx>(mono, x)) * std::exp(-2.0 * n * onb.weight.log_norm(x));
    acc.add(rule.weights[i] * phi(x) * v);
  }
  return acc.value() / onb.dimension();
}

/// Same functional as c^T T c / d_n from a precomputed Toeplitz matrix.
inline double mass_functional(const SectionSample& s, const ToeplitzMatrix& t) {
  if (static_cast<int>(s.coefficients.size()) != t.dimension()) throw config_error("sample/Toeplitz size mismatch");
  Eigen::Map<const Eigen::VectorXd> c(s.coefficients.data(), s.coefficients.size());
  return c.dot(t.t * c) / t.dimension();
}

}  // namespace harnack
