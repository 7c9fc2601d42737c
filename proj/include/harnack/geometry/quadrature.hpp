#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "harnack/error.hpp"
#include "harnack/geometry/projective_point.hpp"

namespace harnack {

/// Gauss-Legendre nodes and weights on [0, 1].
inline void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

/// Neumaier-compensated accumulator; summation results do not depend on the
/// grouping of terms beyond the last bits.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Quadrature for the Fubini-Study probability measure dV on P^2.
///
/// P^2 is split into the three closed polydiscs {|u| <= 1, |v| <= 1} of the
/// max-modulus affine charts; they overlap in measure zero.  On each, dV has
/// density (2 / pi^2)(1 + |u|^2 + |v|^2)^-3 and the rule is product
/// Gauss-Legendre in the moduli r = |u|, |v| on [0, 1] times the periodic
/// trapezoid rule in both phases.  Smooth integrands on P^2 are smooth on each
/// closed polydisc, so the rule converges spectrally; the phase rule is exact
/// for chart frequencies below 3 order / 2 + 4.  Weights are normalized to sum to 1.
struct QuadratureRule {
  std::vector<Homogeneous> unit_nodes;  // unit-norm representatives
  std::vector<double> weights;
  int order = 0;

  std::size_t size() const { return weights.size(); }
};

/// Node budget; orders beyond it are refused.
inline constexpr std::size_t kMaxQuadratureNodes = 6'000'000;

inline int quadrature_radial_points(int order) { return order / 2 + 9; }
inline int quadrature_phase_points(int order) { return 3 * order / 2 + 4; }

inline std::size_t quadrature_node_count(int order) {
  std::size_t nr = quadrature_radial_points(order);
  std::size_t nphase = quadrature_phase_points(order);
  return 3 * nr * nr * nphase * nphase;
}

inline QuadratureRule build_quadrature(int order) {
  if (order < 1) throw config_error("quadrature order must be >= 1");
  if (quadrature_node_count(order) > kMaxQuadratureNodes)
    throw config_error("quadrature order " + std::to_string(order) + " exceeds the node budget");
  const int nr = quadrature_radial_points(order);
  const int nphase = quadrature_phase_points(order);
  std::vector<double> gx, gw;
  gauss_legendre_unit(nr, gx, gw);
  std::vector<cplx> phase(nphase);
  for (int a = 0; a < nphase; ++a) phase[a] = std::polar(1.0, 2.0 * std::numbers::pi * a / nphase);

  QuadratureRule rule;
  rule.order = order;
  const std::size_t total = quadrature_node_count(order);
  rule.unit_nodes.reserve(total);
  rule.weights.reserve(total);
  const double dphase = 2.0 * std::numbers::pi / nphase;
  const double density = 2.0 / (std::numbers::pi * std::numbers::pi);
  for (int chart = 0; chart < 3; ++chart) {
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nr; ++j) {
        double r1 = gx[i], r2 = gx[j];
        double wr = density * gw[i] * gw[j] * r1 * r2 * dphase * dphase /
                    std::pow(1.0 + r1 * r1 + r2 * r2, 3);
        for (int a = 0; a < nphase; ++a) {
          for (int b = 0; b < nphase; ++b) {
            Homogeneous h = from_affine(chart, r1 * phase[a], r2 * phase[b]);
            double nrm = std::sqrt(norm_sq(h));
            for (auto& c : h) c /= nrm;
            rule.unit_nodes.push_back(h);
            rule.weights.push_back(wr);
          }
        }
      }
    }
  }
  CompensatedSum total_w;
  for (double w : rule.weights) total_w.add(w);
  const double norm = total_w.value();
  for (double& w : rule.weights) w /= norm;
  return rule;
}

/// Largest order whose rule fits the node budget.
inline int max_quadrature_order() {
  int k = 1;
  while (quadrature_node_count(k + 1) <= kMaxQuadratureNodes) ++k;
  return k;
}

/// Sum of w_i f(p_i) with compensated summation.
template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double v = f(ProjectivePoint(rule.unit_nodes[i]));
    if (!std::isfinite(v))
      throw numerical_error("integrand is not finite at quadrature node " + std::to_string(i));
    acc.add(rule.weights[i] * v);
  }
  return acc.value();
}

}  // namespace harnack
