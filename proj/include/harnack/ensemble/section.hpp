#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "harnack/concentration/sampler.hpp"
#include "harnack/ensemble/orthonormal_basis.hpp"

namespace harnack {

/// A random real section s = sum_j c_j S_j with its provenance.
struct SectionSample {
  int degree = 0;
  std::vector<double> coefficients;  // in the orthonormal basis
  std::string sampler = "explicit";
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  bool not_absolutely_continuous = false;

  double coefficient_norm_sq() const {
    double s = 0.0;
    for (double c : coefficients) s += c * c;
    return s;
  }
};

/// Draws d_n i.i.d. coefficients from the (seed, trial) stream; the stream tag
/// is the degree, so degrees never share draws.
inline SectionSample sample_section(const OrthonormalBasis& onb, const SubGaussianSampler& sampler,
                                    std::uint64_t seed, std::uint64_t trial) {
  SectionSample s;
  s.degree = onb.degree();
  s.sampler = std::string(sampler.name());
  s.seed = seed;
  s.trial = trial;
  s.not_absolutely_continuous = !sampler.absolutely_continuous();
  Stream g = make_stream(seed, trial, static_cast<std::uint64_t>(onb.degree()));
  s.coefficients.resize(onb.dimension());
  for (double& c : s.coefficients) c = sampler(g);
  return s;
}

inline SectionSample section_from_coefficients(const OrthonormalBasis& onb, std::vector<double> c) {
  if (static_cast<int>(c.size()) != onb.dimension()) throw config_error("coefficient vector has wrong length");
  for (double v : c)
    if (!std::isfinite(v)) throw config_error("coefficient vector has non-finite entries");
  SectionSample s;
  s.degree = onb.degree();
  s.coefficients = std::move(c);
  return s;
}

/// Sample whose monomial coefficients are `mono` (inverts the basis transform).
inline SectionSample section_from_monomials(const OrthonormalBasis& onb, const std::vector<double>& mono) {
  if (static_cast<int>(mono.size()) != onb.dimension()) throw config_error("coefficient vector has wrong length");
  Eigen::Map<const Eigen::VectorXd> m(mono.data(), mono.size());
  Eigen::VectorXd c = onb.transform.lu().solve(m);
  return section_from_coefficients(onb, std::vector<double>(c.data(), c.data() + c.size()));
}

/// Monomial coefficients B c of the section (basis order).
inline std::vector<double> monomial_coefficients(const SectionSample& s, const OrthonormalBasis& onb) {
  if (static_cast<int>(s.coefficients.size()) != onb.dimension()) throw config_error("sample/basis degree mismatch");
  Eigen::Map<const Eigen::VectorXd> c(s.coefficients.data(), s.coefficients.size());
  Eigen::VectorXd m = onb.transform * c;
  return {m.data(), m.data() + m.size()};
}

struct SectionValue {
  cplx value;     // polynomial value in the chart of the point
  double h_norm;  // |s(p)|_{h^n}, chart independent
};

/// Value in chart `chart` (the representative with that coordinate equal to 1).
inline SectionValue evaluate_section(const SectionSample& s, const OrthonormalBasis& onb, const ProjectivePoint& p,
                                     int chart) {
  auto mono = monomial_coefficients(s, onb);
  Homogeneous x = p.in_chart(chart);
  cplx v = onb.basis.evaluate_polynomial<cplx>(mono, x);
  double hn = std::abs(v) * std::exp(-onb.degree() * onb.weight.log_norm(x));
  return {v, hn};
}

inline SectionValue evaluate_section(const SectionSample& s, const OrthonormalBasis& onb, const ProjectivePoint& p) {
  return evaluate_section(s, onb, p, p.chart());
}

/// Quadrature value of ||s||_n^2 = integral of |s|^2_{h^n} dV.
inline double section_norm(const SectionSample& s, const OrthonormalBasis& onb, const QuadratureRule& rule) {
  auto mono = monomial_coefficients(s, onb);
  const int n = onb.degree();
  CompensatedSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& x = rule.unit_nodes[i];
    cplx v = onb.basis.evaluate_polynomial<cplx>(mono, x);
    acc.add(rule.weights[i] * std::norm(v) * std::exp(-2.0 * n * onb.weight.log_norm(x)));
  }
  return acc.value();
}

}  // namespace harnack
