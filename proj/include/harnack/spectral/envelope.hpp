#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "harnack/error.hpp"
#include "harnack/geometry/curvature.hpp"
#include "harnack/geometry/weight.hpp"

namespace harnack {

// For a toric-radial weight the local weight in the chart z = 1 is
// psi(log|w|), w = (u, v).  It is psh iff psi is convex and nondecreasing, and
// has O(1) growth iff its slopes stay in [0, 1].  The envelope on a bounded
// window is therefore the largest convex minorant of the sampled profile
// whose slopes lie in [slope_lo, slope_hi] subset [0, 1].

inline constexpr double kContactTolerance = 1e-10;

struct EnvelopeGrid {
  std::vector<double> t;        // log|w|, strictly increasing
  std::vector<double> profile;  // psi(t)
  std::vector<double> envelope;
  std::vector<bool> contact;    // envelope == profile within kContactTolerance
  double slope_lo = 0.0, slope_hi = 1.0;

  std::size_t size() const { return t.size(); }
  std::size_t contact_count() const {
    std::size_t k = 0;
    for (bool c : contact) k += c;
    return k;
  }
};

/// Uniform slice grid of a weight's toric profile on [t_lo, t_hi].
inline EnvelopeGrid toric_profile_grid(const Weight& w, double t_lo, double t_hi, int points) {
  if (points < 3 || !(t_hi > t_lo)) throw config_error("profile grid needs >= 3 points on a nonempty window");
  EnvelopeGrid g;
  for (int i = 0; i < points; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / (points - 1);
    g.t.push_back(t);
    g.profile.push_back(w.profile(t));
  }
  return g;
}

inline EnvelopeGrid equilibrium_envelope_toric(const std::vector<double>& t, const std::vector<double>& profile,
                                               double slope_lo = 0.0, double slope_hi = 1.0) {
  const std::size_t n = t.size();
  if (n < 3 || profile.size() != n) throw config_error("envelope needs >= 3 samples with matching lengths");
  if (!(0.0 <= slope_lo && slope_lo <= slope_hi && slope_hi <= 1.0))
    throw config_error("boundary slopes must satisfy 0 <= lo <= hi <= 1 (O(1) growth window)");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(profile[i])) throw config_error("profile samples must be finite");
    if (i && !(t[i] > t[i - 1])) throw config_error("profile grid must be strictly increasing");
  }

  // lower hull, monotone chain
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double cross = (t[b] - t[a]) * (profile[i] - profile[a]) - (profile[b] - profile[a]) * (t[i] - t[a]);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  auto slope = [&](std::size_t k) {  // of hull segment k -> k+1
    return (profile[hull[k + 1]] - profile[hull[k]]) / (t[hull[k + 1]] - t[hull[k]]);
  };
  // tangent points where the hull slope enters [slope_lo, slope_hi]
  std::size_t a = 0;
  while (a + 1 < hull.size() && slope(a) < slope_lo) ++a;
  std::size_t b = hull.size() - 1;
  while (b > 0 && slope(b - 1) > slope_hi) --b;

  EnvelopeGrid g;
  g.t = t;
  g.profile = profile;
  g.slope_lo = slope_lo;
  g.slope_hi = slope_hi;
  g.envelope.resize(n);
  const std::size_t ia = hull[a], ib = hull[b];
  std::size_t seg = a;
  for (std::size_t i = 0; i < n; ++i) {
    double v;
    if (i <= ia) {
      v = profile[ia] + slope_lo * (t[i] - t[ia]);
    } else if (i >= ib) {
      v = profile[ib] + slope_hi * (t[i] - t[ib]);
    } else {
      while (hull[seg + 1] < i) ++seg;
      std::size_t l = hull[seg], r = hull[seg + 1];
      v = i == r ? profile[r] : profile[l] + slope(seg) * (t[i] - t[l]);
    }
    g.envelope[i] = v;
  }
  g.contact.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.contact[i] = std::abs(g.envelope[i] - profile[i]) <= kContactTolerance;
  return g;
}

inline EnvelopeGrid equilibrium_envelope_toric(const EnvelopeGrid& in) {
  return equilibrium_envelope_toric(in.t, in.profile, in.slope_lo, in.slope_hi);
}

/// psi' psi'' by central differences at interior nodes (ends copy their
/// neighbour).  The density of (dd^c psi(log|w|))^2 is psi' psi'' / (8 |w|^4),
/// so its sign is that of this product; the factor is left out because it
/// amplifies rounding without bound as |w| -> 0.
inline std::vector<double> envelope_curvature(const EnvelopeGrid& g) {
  const std::size_t n = g.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double hl = g.t[i] - g.t[i - 1], hr = g.t[i + 1] - g.t[i];
    double dl = (g.envelope[i] - g.envelope[i - 1]) / hl;
    double dr = (g.envelope[i + 1] - g.envelope[i]) / hr;
    double d1 = (hr * dl + hl * dr) / (hl + hr);
    double d2 = 2.0 * (dr - dl) / (hl + hr);
    out[i] = d1 * d2;
  }
  out[0] = out[1];
  out[n - 1] = out[n - 2];
  return out;
}

/// Smallest discrete second difference of the envelope (convexity check).
inline double min_second_difference(const EnvelopeGrid& g) {
  double m = INFINITY;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    double dl = (g.envelope[i] - g.envelope[i - 1]) / (g.t[i] - g.t[i - 1]);
    double dr = (g.envelope[i + 1] - g.envelope[i]) / (g.t[i + 1] - g.t[i]);
    m = std::min(m, dr - dl);
  }
  return m;
}

enum class SupportClass { contact_positive, contact_only, outside };

inline std::string_view to_string(SupportClass c) {
  switch (c) {
    case SupportClass::contact_positive: return "contact-positive";
    case SupportClass::contact_only: return "contact-only";
    case SupportClass::outside: return "outside";
  }
  return "?";
}

struct SupportReport {
  std::vector<SupportClass> classes;
  std::vector<std::pair<double, double>> support;  // closures of runs of contact_positive nodes
  std::size_t count(SupportClass c) const {
    std::size_t k = 0;
    for (auto x : classes) k += x == c;
    return k;
  }
};

/// Classifies slice nodes (e^t : 0 : 1) by contact and curvature positivity
/// of the weight itself.
inline SupportReport equilibrium_support(const Weight& w, const EnvelopeGrid& g, double step = kDefaultCurvatureStep) {
  SupportReport rep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    SupportClass c = SupportClass::outside;
    if (g.contact[i]) {
      auto p = ProjectivePoint::real(std::exp(g.t[i]), 0.0, 1.0);
      c = curvature_positive(w, p, step) ? SupportClass::contact_positive : SupportClass::contact_only;
    }
    rep.classes.push_back(c);
  }
  for (std::size_t i = 0; i < g.size();) {
    if (rep.classes[i] != SupportClass::contact_positive) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < g.size() && rep.classes[j + 1] == SupportClass::contact_positive) ++j;
    rep.support.emplace_back(g.t[i], g.t[j]);
    i = j + 1;
  }
  return rep;
}

}  // namespace harnack
