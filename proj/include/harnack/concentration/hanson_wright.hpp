#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "harnack/concentration/sampler.hpp"
#include "harnack/ensemble/section.hpp"
#include "harnack/error.hpp"
#include "harnack/parallel.hpp"
#include "harnack/spectral/toeplitz.hpp"

namespace harnack {

/// Quadratic-form data: X^T A X - Tr A for X with i.i.d. mean-zero,
/// unit-variance coordinates of psi_2 norm at most K.  c is the (unspecified
/// absolute) constant, an explicit parameter here.
struct ConcentrationProblem {
  Eigen::MatrixXd a;
  double op_norm = 0.0;
  double hs_norm = 0.0;
  double k = 1.0;
  double c = 1.0;
  double t = 0.0;

  int size() const { return static_cast<int>(a.rows()); }
};

inline ConcentrationProblem make_concentration_problem(const Eigen::MatrixXd& a, double k, double c, double t) {
  if (a.rows() != a.cols() || a.rows() == 0) throw config_error("A must be square and nonempty");
  if (!a.allFinite()) throw config_error("A must be finite");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw config_error("A must be symmetric");
  if (!(k > 0.0)) throw config_error("psi_2 bound K must be > 0");
  if (!(c > 0.0)) throw config_error("constant c must be > 0");
  if (!(t >= 0.0)) throw config_error("level t must be >= 0");
  ConcentrationProblem p;
  p.a = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.a, Eigen::EigenvaluesOnly);
  p.op_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  p.hs_norm = std::sqrt((p.a * p.a.transpose()).trace());
  p.k = k;
  p.c = c;
  p.t = t;
  return p;
}

/// min(t^2 / (K^4 ||A||_HS^2), t / (K^2 ||A||)); +inf for A = 0 and t > 0.
inline double hw_exponent(const ConcentrationProblem& p) {
  if (p.t == 0.0) return 0.0;
  if (p.hs_norm == 0.0) return std::numeric_limits<double>::infinity();
  double k2 = p.k * p.k;
  return std::min(p.t * p.t / (k2 * k2 * p.hs_norm * p.hs_norm), p.t / (k2 * p.op_norm));
}

inline double hw_bound(const ConcentrationProblem& p) { return 2.0 * std::exp(-p.c * hw_exponent(p)); }

/// Exceedance counts with exact integer aggregation.
struct TailEstimate {
  std::size_t trials = 0;
  std::size_t exceed = 0;

  double frequency() const { return trials ? double(exceed) / trials : 0.0; }
  double standard_error() const {
    double p = frequency();
    return std::sqrt(p * (1.0 - p) / std::max<std::size_t>(trials, 1));
  }
  /// Wilson score upper limit at z standard deviations.
  double upper(double z = 3.0) const {
    double n = double(trials), p = frequency(), z2 = z * z;
    return (p + z2 / (2 * n) + z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n))) / (1 + z2 / n);
  }
};

namespace detail {
inline constexpr std::uint64_t kQuadraticTag = 0x9f0a;
inline constexpr std::size_t kTrialChunk = 1024;

// Counts |g(trial)| > t_j over trials, splitting trials into fixed chunks.
template <class G>
std::vector<TailEstimate> count_exceedances(std::size_t trials, const std::vector<double>& ts, int workers, G&& g) {
  const std::size_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<std::vector<std::size_t>> per(chunks, std::vector<std::size_t>(ts.size(), 0));
  parallel_for(chunks, workers, [&](std::size_t c) {
    std::size_t end = std::min(trials, (c + 1) * kTrialChunk);
    for (std::size_t i = c * kTrialChunk; i < end; ++i) {
      double v = std::abs(g(i));
      for (std::size_t j = 0; j < ts.size(); ++j) per[c][j] += v > ts[j];
    }
  });
  std::vector<TailEstimate> out(ts.size());
  for (std::size_t j = 0; j < ts.size(); ++j) {
    out[j].trials = trials;
    for (const auto& p : per) out[j].exceed += p[j];
  }
  return out;
}
}  // namespace detail

/// Empirical P(|X^T A X - Tr A| > t_j) for each level; trial i draws X from
/// stream (seed, i).
inline std::vector<TailEstimate> empirical_quadratic_tails(const SubGaussianSampler& s, const Eigen::MatrixXd& a,
                                                           const std::vector<double>& ts, std::size_t trials,
                                                           std::uint64_t seed = 0, int workers = 1) {
  if (trials < 1) throw config_error("trials must be >= 1");
  if (a.rows() != a.cols()) throw config_error("A must be square");
  const Eigen::Index n = a.rows();
  const double tr = a.trace();
  return detail::count_exceedances(trials, ts, workers, [&](std::size_t i) {
    Stream g = make_stream(seed, i, detail::kQuadraticTag);
    Eigen::VectorXd x(n);
    for (Eigen::Index k = 0; k < n; ++k) x(k) = s(g);
    return x.dot(a * x) - tr;
  });
}

inline TailEstimate empirical_quadratic_tail(const SubGaussianSampler& s, const Eigen::MatrixXd& a, double t,
                                             std::size_t trials, std::uint64_t seed = 0, int workers = 1) {
  return empirical_quadratic_tails(s, a, {t}, trials, seed, workers)[0];
}

/// Frequency of ||s||_n > d_n, i.e. sum c_j^2 > d_n^2, against d_n e^-d_n.
struct NormTailResult {
  int degree = 0;
  int dimension = 0;
  TailEstimate tail;
  double bound = 0.0;
};

inline NormTailResult norm_tail_experiment(const OrthonormalBasis& onb, const SubGaussianSampler& s,
                                           std::size_t trials, std::uint64_t seed = 0, int workers = 1) {
  NormTailResult r;
  r.degree = onb.degree();
  r.dimension = onb.dimension();
  const double d = r.dimension;
  r.bound = d * std::exp(-d);
  r.tail = detail::count_exceedances(trials, {d * d}, workers, [&](std::size_t i) {
    return sample_section(onb, s, seed, i).coefficient_norm_sq();
  })[0];
  return r;
}

/// Frequency of |(s^T T s - Tr T)/d_n| > eps, reported with the Hanson-Wright
/// value for A = T at t = eps d_n.
struct ToeplitzConcentrationResult {
  int degree = 0;
  double eps = 0.0;
  TailEstimate tail;
  double bound = 0.0;
};

inline ToeplitzConcentrationResult toeplitz_concentration_experiment(const OrthonormalBasis& onb,
                                                                     const ToeplitzMatrix& t,
                                                                     const SubGaussianSampler& s, double eps,
                                                                     std::size_t trials, std::uint64_t seed = 0,
                                                                     double k = 1.0, double c = 1.0, int workers = 1) {
  if (t.dimension() != onb.dimension()) throw config_error("Toeplitz matrix does not match the basis");
  if (!(eps > 0.0)) throw config_error("eps must be > 0");
  const double d = onb.dimension();
  ToeplitzConcentrationResult r;
  r.degree = onb.degree();
  r.eps = eps;
  r.bound = hw_bound(make_concentration_problem(t.t, k, c, eps * d));
  r.tail = detail::count_exceedances(trials, {eps}, workers, [&](std::size_t i) {
    auto smp = sample_section(onb, s, seed, i);
    Eigen::Map<const Eigen::VectorXd> x(smp.coefficients.data(), smp.coefficients.size());
    return (x.dot(t.t * x) - t.trace) / d;
  })[0];
  return r;
}

/// One calibration or validation case of the Hanson-Wright study.
struct HwCase {
  std::string id;
  Eigen::MatrixXd a;
  std::vector<double> ts;
};

struct HwConstraint {
  std::string id;
  double t = 0.0;
  TailEstimate tail;
  double exponent = 0.0;
  double c_max = 0.0;  // largest c with 2 exp(-c exponent) >= Wilson upper limit
};

/// Fit of c: the largest value for which the bound dominates the 3-sigma
/// Wilson upper limit of every calibration tail, so that it can then be frozen
/// and checked on fresh draws.
struct HwCalibration {
  std::string sampler;
  double k = 1.0;
  double c_hat = 0.0;
  std::vector<HwConstraint> constraints;
};

inline HwCalibration calibrate_hw_constant(const SubGaussianSampler& s, double k, const std::vector<HwCase>& cases,
                                           std::size_t trials, std::uint64_t seed, int workers = 1) {
  HwCalibration cal;
  cal.sampler = std::string(s.name());
  cal.k = k;
  cal.c_hat = std::numeric_limits<double>::infinity();
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& cs = cases[ci];
    auto tails = empirical_quadratic_tails(s, cs.a, cs.ts, trials, seed + 7919 * ci, workers);
    for (std::size_t j = 0; j < cs.ts.size(); ++j) {
      HwConstraint h;
      h.id = cs.id;
      h.t = cs.ts[j];
      h.tail = tails[j];
      h.exponent = hw_exponent(make_concentration_problem(cs.a, k, 1.0, cs.ts[j]));
      double u = tails[j].upper();
      h.c_max = h.exponent > 0.0 ? -std::log(u / 2.0) / h.exponent : std::numeric_limits<double>::infinity();
      cal.c_hat = std::min(cal.c_hat, h.c_max);
      cal.constraints.push_back(h);
    }
  }
  if (!std::isfinite(cal.c_hat) || !(cal.c_hat > 0.0)) throw numerical_error("Hanson-Wright calibration failed");
  return cal;
}

struct HwValidationRow {
  std::string id;
  double t = 0.0;
  TailEstimate tail;
  double bound = 0.0;
  bool holds = false;
};

inline std::vector<HwValidationRow> validate_hw_constant(const SubGaussianSampler& s, const HwCalibration& cal,
                                                         const std::vector<HwCase>& cases, std::size_t trials,
                                                         std::uint64_t seed, int workers = 1) {
  std::vector<HwValidationRow> rows;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& cs = cases[ci];
    auto tails = empirical_quadratic_tails(s, cs.a, cs.ts, trials, seed + 7919 * ci, workers);
    for (std::size_t j = 0; j < cs.ts.size(); ++j) {
      HwValidationRow r{cs.id, cs.ts[j], tails[j], 0.0, false};
      r.bound = hw_bound(make_concentration_problem(cs.a, cal.k, cal.c_hat, cs.ts[j]));
      r.holds = r.tail.frequency() <= r.bound;
      rows.push_back(r);
    }
  }
  return rows;
}

/// The bundled Hanson-Wright case matrix: identities, diagonal and dense
/// symmetric matrices, levels at multiples of ||A||_HS.
inline std::vector<HwCase> default_hw_cases() {
  std::vector<HwCase> out;
  auto add = [&](std::string id, Eigen::MatrixXd a) {
    double hs = a.norm();
    out.push_back({std::move(id), a, {0.5 * hs, hs, 2.0 * hs, 3.0 * hs, 4.0 * hs}});
  };
  add("identity-2", Eigen::MatrixXd::Identity(2, 2));
  add("identity-5", Eigen::MatrixXd::Identity(5, 5));
  Eigen::VectorXd d(6);
  d << 1, 2, 3, 4, 5, 6;
  add("diag-1..6", d.asDiagonal().toDenseMatrix());
  Eigen::MatrixXd m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = std::cos(1.0 + i + 2.0 * j) + std::cos(1.0 + j + 2.0 * i);
  add("dense-6", m);
  add("rank-one-8", Eigen::MatrixXd::Ones(8, 8) / 8.0);
  return out;
}

}  // namespace harnack
