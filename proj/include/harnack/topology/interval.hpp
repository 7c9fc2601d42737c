#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace harnack {

/// Closed interval with outward rounding: every operation widens its
/// round-to-nearest result by one ulp on each side, so the exact real result
/// of the operation on any members is contained.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT: exact point
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  bool positive() const { return lo > 0.0; }
  bool negative() const { return hi < 0.0; }
  bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
  /// +1 / -1 when the sign is certified, 0 otherwise.
  int sign() const { return positive() ? 1 : (negative() ? -1 : 0); }
  double width() const { return hi - lo; }
  double mag_lower() const { return contains_zero() ? 0.0 : std::min(std::abs(lo), std::abs(hi)); }
};

namespace detail {
inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
}  // namespace detail

inline Interval operator+(Interval a, Interval b) { return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)}; }
inline Interval operator-(Interval a, Interval b) { return {detail::down(a.lo - b.hi), detail::up(a.hi - b.lo)}; }
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
  double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {detail::down(std::min({p1, p2, p3, p4})), detail::up(std::max({p1, p2, p3, p4}))};
}

/// a / d for a positive scalar d.
inline Interval divide(Interval a, double d) {
  double l = a.lo / d, h = a.hi / d;
  return {detail::down(l), detail::up(h)};
}

/// Exact for powers of two (no underflow at desk-scale depths).
inline Interval half(Interval a) { return {0.5 * a.lo, 0.5 * a.hi}; }

inline Interval& operator+=(Interval& a, Interval b) { return a = a + b; }

inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace harnack
