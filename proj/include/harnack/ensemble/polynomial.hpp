#pragma once

#include <array>
#include <span>
#include <vector>

#include "harnack/ensemble/monomial_basis.hpp"

namespace harnack {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Position of x^a y^b z^(k-a-b) in the lexicographic degree-k basis.
inline int monomial_index(int k, int a, int b) { return a * (k + 1) - a * (a - 1) / 2 + b; }

/// Dense homogeneous polynomial in x, y, z with coefficients of type T.
template <class T>
struct HomPoly {
  int degree = 0;
  std::vector<T> coeffs;

  explicit HomPoly(int k = 0) : degree(k), coeffs((k + 1) * (k + 2) / 2, T(0.0)) {}

  T& at(int a, int b) { return coeffs[monomial_index(degree, a, b)]; }
  const T& at(int a, int b) const { return coeffs[monomial_index(degree, a, b)]; }
};

template <class T>
HomPoly<T> multiply(const HomPoly<T>& p, const HomPoly<T>& q) {
  HomPoly<T> r(p.degree + q.degree);
  for (int a1 = 0; a1 <= p.degree; ++a1)
    for (int b1 = 0; b1 <= p.degree - a1; ++b1) {
      const T& x = p.at(a1, b1);
      for (int a2 = 0; a2 <= q.degree; ++a2)
        for (int b2 = 0; b2 <= q.degree - a2; ++b2) r.at(a1 + a2, b1 + b2) += x * q.at(a2, b2);
    }
  return r;
}

/// Monomial coefficients (basis order) of X -> P(M X).  T = double for plain
/// arithmetic; an outward-rounded interval type gives an enclosure.
template <class T>
std::vector<T> substitute_linear(const MonomialBasis& basis, std::span<const double> coeffs, const Matrix3& m) {
  const int n = basis.degree();
  // powers[k][e] = (row k of M . X)^e
  std::array<std::vector<HomPoly<T>>, 3> powers;
  for (int k = 0; k < 3; ++k) {
    HomPoly<T> lin(1);
    lin.at(1, 0) = T(m[k][0]);
    lin.at(0, 1) = T(m[k][1]);
    lin.at(0, 0) = T(m[k][2]);
    HomPoly<T> one(0);
    one.at(0, 0) = T(1.0);
    powers[k].push_back(one);
    for (int e = 1; e <= n; ++e) powers[k].push_back(multiply(powers[k].back(), lin));
  }
  HomPoly<T> out(n);
  for (int i = 0; i < basis.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    const Exponent& e = basis[i];
    HomPoly<T> term = multiply(multiply(powers[0][e.a], powers[1][e.b]), powers[2][e.c]);
    T c(coeffs[i]);
    for (std::size_t j = 0; j < term.coeffs.size(); ++j) out.coeffs[j] += c * term.coeffs[j];
  }
  return out.coeffs;
}

}  // namespace harnack
