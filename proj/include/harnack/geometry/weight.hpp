#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harnack/error.hpp"
#include "harnack/geometry/projective_point.hpp"

namespace harnack {

enum class WeightKind { fubini_study, perturbed, toric_radial };

inline std::string_view to_string(WeightKind k) {
  switch (k) {
    case WeightKind::fubini_study: return "fubini-study";
    case WeightKind::perturbed: return "perturbed";
    case WeightKind::toric_radial: return "toric-radial";
  }
  return "?";
}

/// exp(1 - 1/(1 - r2)) on r2 < 1, zero outside; smooth, compactly supported,
/// equal to 1 at the origin.
inline double smooth_bump(double r2) {
  if (!(r2 < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r2));
}

/// Metric weight on O(1) over P^2.
///
/// Every kind is represented by its homogeneous log-norm
///   H(X) = 1/2 log|X|^2 + f([X]),
/// with f a function on P^2 (degree-0 homogeneous).  The local weight in
/// chart c is H evaluated on the representative with X_c = 1, so chart
/// transitions differ by log|X_c / X_c'| automatically, and the pointwise
/// norm of a degree-n section is |P(X)| exp(-n H(X)).
///
///  fubini-study   f = 0
///  perturbed      f = amplitude * bump(sin^2 d(X, center) / radius^2)
///  toric-radial   f = dip * exp(-((t - t0)/width)^2),
///                 t = 1/2 log((|x|^2 + |y|^2) / |z|^2)
///                 (a dip of depth `dip` in log h = -phi)
class Weight {
 public:
  Weight() = default;

  static Weight fubini_study() { return Weight(WeightKind::fubini_study, {}); }

  static Weight perturbed(double amplitude, const ProjectivePoint& center, double radius) {
    if (!(amplitude >= 0.0)) throw config_error("perturbed weight: amplitude must be >= 0");
    if (!(radius > 0.0)) throw config_error("perturbed weight: radius must be > 0");
    if (!center.is_real()) throw config_error("perturbed weight: bump center must be a real point");
    auto u = center.unit();
    return Weight(WeightKind::perturbed, {amplitude, u[0].real(), u[1].real(), u[2].real(), radius});
  }

  static Weight toric_radial(double dip, double center, double width) {
    if (!(dip >= 0.0)) throw config_error("toric-radial weight: dip must be >= 0");
    if (!(width > 0.0)) throw config_error("toric-radial weight: width must be > 0");
    return Weight(WeightKind::toric_radial, {dip, center, width});
  }

  /// Parses a kind name plus its parameter list (the config-file form).
  static Weight from_spec(std::string_view kind, std::span<const double> p) {
    if (kind == "fubini-study") {
      if (!p.empty()) throw config_error("fubini-study weight takes no parameters");
      return fubini_study();
    }
    if (kind == "perturbed") {
      if (p.size() != 5)
        throw config_error("perturbed weight takes amplitude,cx,cy,cz,radius");
      return perturbed(p[0], ProjectivePoint::real(p[1], p[2], p[3]), p[4]);
    }
    if (kind == "toric-radial") {
      if (p.size() != 3) throw config_error("toric-radial weight takes dip,center,width");
      return toric_radial(p[0], p[1], p[2]);
    }
    throw config_error("unknown weight kind '" + std::string(kind) + "'");
  }

  WeightKind kind() const { return kind_; }
  const std::vector<double>& parameters() const { return params_; }

  /// Bump center for perturbed weights; (1:1:1) otherwise.
  Homogeneous feature_center() const {
    if (kind_ == WeightKind::perturbed) return {params_[1], params_[2], params_[3]};
    double s = 1.0 / std::sqrt(3.0);
    return {s, s, s};
  }

  /// The degree-0 homogeneous correction f([X]).
  double correction(const Homogeneous& x) const {
    switch (kind_) {
      case WeightKind::fubini_study:
        return 0.0;
      case WeightKind::perturbed: {
        if (params_[0] == 0.0) return 0.0;
        Homogeneous c{params_[1], params_[2], params_[3]};
        double s = 1.0 - cos2_distance(x, c);
        return params_[0] * smooth_bump(s / (params_[4] * params_[4]));
      }
      case WeightKind::toric_radial: {
        double num = std::norm(x[0]) + std::norm(x[1]);
        double den = std::norm(x[2]);
        if (num == 0.0 || den == 0.0) return 0.0;
        return dip(0.5 * std::log(num / den));
      }
    }
    return 0.0;
  }

  /// H(X) = 1/2 log|X|^2 + f([X]).
  double log_norm(const Homogeneous& x) const { return 0.5 * std::log(norm_sq(x)) + correction(x); }

  /// Local weight with respect to the standard frame of chart c.
  double local(const ProjectivePoint& p, int c) const { return log_norm(p.in_chart(c)); }
  double local(const ProjectivePoint& p) const { return local(p, p.chart()); }

  /// Toric slice profile: local weight at (u, v) = (e^t, 0) of chart z.
  /// For toric-radial weights the local weight is profile(log|(u, v)|).
  double profile(double t) const {
    return 0.5 * std::log1p(std::exp(2.0 * t)) + correction({std::exp(t), 0.0, 1.0});
  }

 private:
  Weight(WeightKind k, std::vector<double> p) : kind_(k), params_(std::move(p)) {}

  double dip(double t) const {
    double z = (t - params_[1]) / params_[2];
    return params_[0] * std::exp(-z * z);
  }

  WeightKind kind_ = WeightKind::fubini_study;
  std::vector<double> params_;
};

/// 1/2 log(1 + |u|^2 + |v|^2) in the chart of p.
inline double fs_weight(const ProjectivePoint& p) { return Weight::fubini_study().local(p); }

inline double perturbed_weight(const ProjectivePoint& p, double amplitude,
                               const ProjectivePoint& center, double radius) {
  return Weight::perturbed(amplitude, center, radius).local(p);
}

}  // namespace harnack
