#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#include "harnack/topology/interval.hpp"

namespace harnack {

namespace detail {

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact for n <= 30
  return r;
}

// Power coefficients m_0..m_n in u to degree-n Bernstein coefficients on
// [lo, hi], all in outward-rounded interval arithmetic.
inline std::vector<Interval> power_to_bernstein(const std::vector<Interval>& m, double lo, double hi) {
  const int n = static_cast<int>(m.size()) - 1;
  const Interval w = Interval(hi) - Interval(lo);
  std::vector<Interval> lo_pow(n + 1), w_pow(n + 1);
  lo_pow[0] = w_pow[0] = Interval(1.0);
  for (int k = 1; k <= n; ++k) {
    lo_pow[k] = lo_pow[k - 1] * Interval(lo);
    w_pow[k] = w_pow[k - 1] * w;
  }
  // u = lo + w s
  std::vector<Interval> a(n + 1, Interval(0.0));
  for (int b = 0; b <= n; ++b)
    for (int k = 0; k <= b; ++k) a[k] += m[b] * Interval(binomial(b, k)) * w_pow[k] * lo_pow[b - k];
  std::vector<Interval> beta(n + 1, Interval(0.0));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= j; ++k) beta[j] += divide(a[k] * Interval(binomial(j, k)), binomial(n, k));
  return beta;
}

}  // namespace detail

/// Tensor-product Bernstein coefficients of degree (n, n) of a bivariate
/// polynomial over a box; b(i, j) pairs with B_i(s) B_j(t).  The polynomial's
/// range over the box lies in the hull of the coefficients.
class BernsteinNet {
 public:
  BernsteinNet() = default;
  explicit BernsteinNet(int n) : n_(n), b_((n + 1) * (n + 1)) {}

  /// From power coefficients c[p][q] of u^p v^q (p + q <= n) on [u0,u1] x [v0,v1].
  static BernsteinNet from_power(int n, const std::vector<std::vector<Interval>>& c, double u0, double u1,
                                 double v0, double v1) {
    BernsteinNet out(n);
    std::vector<std::vector<Interval>> su(n + 1, std::vector<Interval>(n + 1, Interval(0.0)));
    for (int q = 0; q <= n; ++q) {
      std::vector<Interval> col(n + 1, Interval(0.0));
      for (int p = 0; p + q <= n; ++p) col[p] = c[p][q];
      auto beta = detail::power_to_bernstein(col, u0, u1);
      for (int i = 0; i <= n; ++i) su[i][q] = beta[i];
    }
    for (int i = 0; i <= n; ++i) {
      auto beta = detail::power_to_bernstein(su[i], v0, v1);
      for (int j = 0; j <= n; ++j) out.at(i, j) = beta[j];
    }
    return out;
  }

  int degree() const { return n_; }
  Interval& at(int i, int j) { return b_[i * (n_ + 1) + j]; }
  const Interval& at(int i, int j) const { return b_[i * (n_ + 1) + j]; }

  /// +1 / -1 when every coefficient has that strict sign, else 0.
  int sign() const {
    bool pos = true, neg = true;
    for (const auto& x : b_) {
      pos = pos && x.positive();
      neg = neg && x.negative();
    }
    return pos ? 1 : (neg ? -1 : 0);
  }

  /// Splits at s = 1/2 (axis 0) or t = 1/2 (axis 1) by de Casteljau.
  std::array<BernsteinNet, 2> split(int axis) const {
    BernsteinNet lo(n_), hi(n_);
    std::vector<Interval> w(n_ + 1);
    for (int line = 0; line <= n_; ++line) {
      for (int k = 0; k <= n_; ++k) w[k] = axis == 0 ? at(k, line) : at(line, k);
      for (int r = 0; r <= n_; ++r) {
        Interval& l = axis == 0 ? lo.at(r, line) : lo.at(line, r);
        Interval& h = axis == 0 ? hi.at(n_ - r, line) : hi.at(line, n_ - r);
        l = w[0];
        h = w[n_ - r];
        for (int k = 0; k < n_ - r; ++k) w[k] = half(w[k] + w[k + 1]);
      }
    }
    return {lo, hi};
  }

  /// Children in the order (s-low, t-low), (s-low, t-high), (s-high, t-low), (s-high, t-high).
  std::array<BernsteinNet, 4> quarter() const {
    auto [l, h] = split(0);
    auto [ll, lh] = l.split(1);
    auto [hl, hh] = h.split(1);
    return {ll, lh, hl, hh};
  }

  /// Coefficients of the restriction to an edge: 0 s=0, 1 s=1, 2 t=0, 3 t=1.
  std::vector<Interval> edge(int e) const {
    std::vector<Interval> out(n_ + 1);
    for (int k = 0; k <= n_; ++k) {
      switch (e) {
        case 0: out[k] = at(0, k); break;
        case 1: out[k] = at(n_, k); break;
        case 2: out[k] = at(k, 0); break;
        default: out[k] = at(k, n_); break;
      }
    }
    return out;
  }

  /// Sign of the partial derivative along `axis` when certified (+1/-1), else 0;
  /// `mag` receives the smallest coefficient magnitude of the difference net.
  int derivative_sign(int axis, double* mag = nullptr) const {
    bool pos = true, neg = true;
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n_; ++i)
      for (int j = 0; j <= n_; ++j) {
        if ((axis == 0 && i == n_) || (axis == 1 && j == n_)) continue;
        Interval d = axis == 0 ? at(i + 1, j) - at(i, j) : at(i, j + 1) - at(i, j);
        pos = pos && d.positive();
        neg = neg && d.negative();
        m = std::min(m, d.mag_lower());
      }
    if (mag) *mag = m;
    return pos ? 1 : (neg ? -1 : 0);
  }

 private:
  int n_ = 0;
  std::vector<Interval> b_;
};

/// Number of zeros of a univariate Bernstein polynomial on its interval when
/// it can be decided cheaply: 0 if all coefficients share a strict sign, 1 if
/// the endpoint signs are strict and opposite and the polynomial is monotone.
/// Returns -1 otherwise.
inline int edge_crossings(const std::vector<Interval>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  bool pos = true, neg = true;
  for (const auto& x : c) {
    pos = pos && x.positive();
    neg = neg && x.negative();
  }
  if (pos || neg) return 0;
  if (c[0].sign() == 0 || c[n].sign() == 0 || c[0].sign() == c[n].sign()) return -1;
  int dir = c[n].sign();
  for (int k = 0; k < n; ++k)
    if ((c[k + 1] - c[k]).sign() != dir) return -1;
  return 1;
}

}  // namespace harnack
