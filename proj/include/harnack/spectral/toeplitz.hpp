#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "harnack/ensemble/orthonormal_basis.hpp"
#include "harnack/spectral/bergman.hpp"
#include "harnack/spectral/test_functions.hpp"

namespace harnack {

/// T_jk = integral of phi <S_j, S_k>_{h^n} dV.
struct ToeplitzMatrix {
  std::string id;
  Eigen::MatrixXd t;
  double trace = 0.0;
  double operator_norm = 0.0;  // largest |eigenvalue|
  double hs_norm = 0.0;        // sqrt(Tr(T T^T))

  int dimension() const { return static_cast<int>(t.rows()); }
};

inline ToeplitzMatrix make_toeplitz(std::string id, Eigen::MatrixXd t) {
  ToeplitzMatrix out;
  out.id = std::move(id);
  out.t = 0.5 * (t + t.transpose());
  out.trace = out.t.trace();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.t, Eigen::EigenvaluesOnly);
  out.operator_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  out.hs_norm = std::sqrt((out.t * out.t.transpose()).trace());
  return out;
}

inline ToeplitzMatrix toeplitz_matrix(const OrthonormalBasis& onb, const TestFunction& phi, const QuadratureRule& rule) {
  Eigen::MatrixXd g = detail::weighted_pairing(onb.basis, onb.weight, rule, [&](const Homogeneous& x) { return phi(x); });
  return make_toeplitz(phi.id, onb.transform.transpose() * g * onb.transform);
}

inline ToeplitzMatrix toeplitz_matrix(const OrthonormalBasis& onb, const TestFunction& phi) {
  return toeplitz_matrix(onb, phi, *onb.rule);
}

/// Integral of phi k_n dV over the rule; the trace identity's right side.
inline double weighted_bergman_mass(const OrthonormalBasis& onb, const TestFunction& phi, const QuadratureRule& rule) {
  auto k = bergman_evaluation(onb, rule);
  CompensatedSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) acc.add(rule.weights[i] * phi(rule.unit_nodes[i]) * k.values[i]);
  return acc.value();
}

/// Largest |phi| over the nodes of a rule.
inline double node_sup(const TestFunction& phi, const QuadratureRule& rule) {
  double m = 0.0;
  for (const auto& x : rule.unit_nodes) m = std::max(m, std::abs(phi(x)));
  return m;
}

struct HsGrowthRow {
  int n = 0;
  int dimension = 0;
  double hs_sq = 0.0;
  double ratio = 0.0;  // ||T||_HS^2 / d_n
};

struct HsGrowthReport {
  std::string id;
  std::vector<HsGrowthRow> rows;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
};

inline HsGrowthReport toeplitz_hs_growth(const Weight& w, const TestFunction& phi, const std::vector<int>& degrees) {
  if (degrees.empty()) throw config_error("degree list is empty");
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1]) throw config_error("degree list must be increasing");
  HsGrowthReport rep;
  rep.id = phi.id;
  for (int n : degrees) {
    auto onb = make_orthonormal_basis(n, w);
    auto t = toeplitz_matrix(onb, phi);
    HsGrowthRow r{n, onb.dimension(), t.hs_norm * t.hs_norm, 0.0};
    r.ratio = r.hs_sq / r.dimension;
    rep.rows.push_back(r);
  }
  rep.max_ratio = rep.min_ratio = rep.rows[0].ratio;
  for (const auto& r : rep.rows) {
    rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    rep.min_ratio = std::min(rep.min_ratio, r.ratio);
  }
  return rep;
}

}  // namespace harnack
