#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "harnack/error.hpp"
#include "harnack/geometry/projective_point.hpp"

namespace harnack {

/// d_n = dim H^0(P^2, O(n)) = (n + 1)(n + 2) / 2.
inline int dimension(int n) {
  if (n < 1) throw config_error("degree must be >= 1");
  return (n + 1) * (n + 2) / 2;
}

struct Exponent {
  int a, b, c;
  auto operator<=>(const Exponent&) const = default;
};

/// Degree-n monomials x^a y^b z^c in lexicographic order of (a, b, c).
class MonomialBasis {
 public:
  MonomialBasis() = default;
  static constexpr int kMaxDegree = 15;

  explicit MonomialBasis(int n) : degree_(n) {
    if (n > kMaxDegree) throw config_error("degree too large for the monomial basis");
    exps_.reserve(dimension(n));
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n - a; ++b) exps_.push_back({a, b, n - a - b});
  }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exps_.size()); }
  const std::vector<Exponent>& exponents() const { return exps_; }
  const Exponent& operator[](int i) const { return exps_[i]; }

  int index_of(const Exponent& e) const {
    for (int i = 0; i < size(); ++i)
      if (exps_[i] == e) return i;
    throw config_error("exponent not in basis");
  }

  /// Values of all monomials at x, written into out (size d_n).
  template <class T>
  void evaluate(const std::array<T, 3>& x, std::span<T> out) const {
    std::array<std::array<T, kMaxDegree + 1>, 3> pw;
    for (int k = 0; k < 3; ++k) {
      pw[k][0] = T(1);
      for (int e = 1; e <= degree_; ++e) pw[k][e] = pw[k][e - 1] * x[k];
    }
    for (int i = 0; i < size(); ++i) out[i] = pw[0][exps_[i].a] * pw[1][exps_[i].b] * pw[2][exps_[i].c];
  }

  /// Evaluates the polynomial with the given monomial coefficients.
  template <class T>
  T evaluate_polynomial(std::span<const double> coeffs, const std::array<T, 3>& x) const {
    std::array<T, (kMaxDegree + 1) * (kMaxDegree + 2) / 2> m;
    evaluate<T>(x, std::span<T>(m.data(), size()));
    T acc(0);
    for (int i = 0; i < size(); ++i) acc += coeffs[i] * m[i];
    return acc;
  }

 private:
  int degree_ = 0;
  std::vector<Exponent> exps_;
};

}  // namespace harnack
