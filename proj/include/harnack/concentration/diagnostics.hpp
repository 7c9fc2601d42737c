#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "harnack/concentration/orlicz.hpp"
#include "harnack/concentration/sampler.hpp"
#include "harnack/error.hpp"
#include "harnack/geometry/quadrature.hpp"

namespace harnack {

inline constexpr std::uint64_t kDiagnosticsTag = 0xd1a6;

struct SubGaussianReport {
  std::string sampler;
  std::size_t trials = 0;

  double mean = 0.0, mean_se = 0.0;
  double variance = 0.0, variance_se = 0.0;
  bool moments_ok = false;  // both within 4 standard errors of 0 and 1

  // tail property: P(|X| > alpha) <= 2 exp(-c alpha^2)
  std::array<double, 3> alphas{1.0, 2.0, 3.0};
  std::array<double, 3> tails{};
  std::array<double, 3> c_by_alpha{};  // -ln(tail/2)/alpha^2, +inf when tail = 0
  double c_hat = 0.0;                  // min over alpha
  bool tail_ok = false;

  // moment generating property: E exp(X^2/kappa^2) <= 2
  double kappa = 0.0;
  double mgf_at_kappa = 0.0;
  bool mgf_ok = false;

  bool conforming() const { return moments_ok && tail_ok && mgf_ok; }
};

inline SubGaussianReport subgaussian_diagnostics(const SubGaussianSampler& s, std::size_t trials,
                                                 std::uint64_t seed = 0) {
  if (trials < 1000000) throw config_error("sub-gaussian diagnostics need >= 1e6 trials");
  std::vector<double> x;
  x.reserve(trials);
  for_each_draw(s, trials, seed, kDiagnosticsTag, [&](double v) { x.push_back(v); });

  SubGaussianReport r;
  r.sampler = std::string(s.name());
  r.trials = trials;
  const double n = double(trials);
  CompensatedSum m1, m2, m4;
  std::array<std::size_t, 3> over{};
  for (double v : x) {
    m1.add(v);
    for (int k = 0; k < 3; ++k) over[k] += std::abs(v) > r.alphas[k];
  }
  r.mean = m1.value() / n;
  for (double v : x) {
    double d = v - r.mean;
    m2.add(d * d);
    m4.add(d * d * d * d);
  }
  r.variance = m2.value() / (n - 1.0);
  r.mean_se = std::sqrt(r.variance / n);
  r.variance_se = std::sqrt(std::max(0.0, m4.value() / n - r.variance * r.variance) / n);
  r.moments_ok = std::abs(r.mean) <= 4.0 * r.mean_se && std::abs(r.variance - 1.0) <= 4.0 * r.variance_se;

  r.c_hat = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    r.tails[k] = over[k] / n;
    r.c_by_alpha[k] = r.tails[k] > 0.0 ? -std::log(r.tails[k] / 2.0) / (r.alphas[k] * r.alphas[k])
                                       : std::numeric_limits<double>::infinity();
    r.c_hat = std::min(r.c_hat, r.c_by_alpha[k]);
  }
  r.tail_ok = r.c_hat > 0.0;

  auto mgf = [&](double kappa) {
    CompensatedSum acc;
    const double inv = 1.0 / (kappa * kappa);
    for (double v : x) acc.add(std::exp(v * v * inv));
    return acc.value() / n;
  };
  // E exp(X^2/kappa^2) decreases in kappa; bisect for the level 2
  double lo = 0.05, hi = 1.0;
  while (mgf(hi) > 2.0 && hi < 1e3) hi *= 2.0;
  if (mgf(hi) <= 2.0) {
    for (int it = 0; it < 40; ++it) {
      double mid = 0.5 * (lo + hi);
      (mgf(mid) > 2.0 ? lo : hi) = mid;
    }
    r.kappa = hi;
    r.mgf_at_kappa = mgf(hi);
    r.mgf_ok = std::isfinite(r.mgf_at_kappa) && r.mgf_at_kappa <= 2.0;
  }
  return r;
}

}  // namespace harnack
