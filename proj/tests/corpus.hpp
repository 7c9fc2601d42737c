#pragma once

// Classical real plane curves with known component counts, given by their
// monomial coefficients.

#include <map>
#include <string>
#include <vector>

#include "harnack/ensemble/monomial_basis.hpp"

namespace corpus {

// Sparse homogeneous polynomial in x, y, z.
struct Poly {
  std::map<std::array<int, 3>, double> terms;

  static Poly mono(double c, int a, int b, int d) {
    Poly p;
    p.terms[{a, b, d}] = c;
    return p;
  }
  int degree() const {
    const auto& e = terms.begin()->first;
    return e[0] + e[1] + e[2];
  }
  std::vector<double> coefficients() const {
    harnack::MonomialBasis basis(degree());
    std::vector<double> c(basis.size(), 0.0);
    for (const auto& [e, v] : terms) c[basis.index_of({e[0], e[1], e[2]})] += v;
    return c;
  }
};

inline Poly operator+(Poly a, const Poly& b) {
  for (const auto& [e, v] : b.terms) a.terms[e] += v;
  return a;
}
inline Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& [e, v] : r.terms) v = -v;
  return r;
}
inline Poly operator-(Poly a, const Poly& b) { return a + (-b); }
inline Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [e1, v1] : a.terms)
    for (const auto& [e2, v2] : b.terms) r.terms[{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}] += v1 * v2;
  return r;
}
inline Poly operator*(double c, const Poly& a) { return Poly::mono(c, 0, 0, 0) * a; }

inline const Poly X = Poly::mono(1, 1, 0, 0), Y = Poly::mono(1, 0, 1, 0), Z = Poly::mono(1, 0, 0, 1);

inline Poly pow(const Poly& p, int k) {
  Poly r = Poly::mono(1, 0, 0, 0);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

struct Curve {
  std::string name;
  Poly poly;
  int b0;  // expected count in RP^2
};

inline Poly circle(double cx, double cy, double r) {
  return pow(X - cx * Z, 2) + pow(Y - cy * Z, 2) - (r * r) * pow(Z, 2);
}

inline std::vector<Curve> classical_curves() {
  return {
      {"line", X, 1},
      {"empty conic", pow(X, 2) + pow(Y, 2) + pow(Z, 2), 0},
      {"empty ellipsoid conic", pow(X, 2) + 2.0 * pow(Y, 2) + 3.0 * pow(Z, 2), 0},
      {"circle", pow(X, 2) + pow(Y, 2) - pow(Z, 2), 1},
      {"hyperbola", 2.0 * pow(X, 2) - pow(Y, 2) - 3.0 * pow(Z, 2), 1},
      {"maximal cubic", pow(Y, 2) * Z - pow(X, 3) + X * pow(Z, 2), 2},
      {"one-branch cubic", pow(Y, 2) * Z - pow(X, 3) - X * pow(Z, 2), 1},
      {"fermat cubic", pow(X, 3) + pow(Y, 3) + pow(Z, 3), 1},
      {"four-oval quartic",
       (pow(X, 2) + 2.0 * pow(Y, 2) - pow(Z, 2)) * (2.0 * pow(X, 2) + pow(Y, 2) - pow(Z, 2)) + 0.02 * pow(Z, 4), 4},
      {"fermat quartic", pow(X, 4) + pow(Y, 4) - pow(Z, 4), 1},
      {"empty quartic", pow(X, 4) + pow(Y, 4) + pow(Z, 4), 0},
      {"nested ovals", circle(0, 0, 1) * circle(0, 0, 2) + 0.1 * pow(Z, 4), 2},
      {"separate ovals", circle(-2, 0, 1) * circle(2, 0, 1) + 0.1 * pow(Z, 4), 2},
      {"three nested ovals", circle(0, 0, 1) * circle(0, 0, 2) * circle(0, 0, 3) + 0.1 * pow(Z, 6), 3},
      {"line through oval", (X - 0.2 * Z) * circle(0, 0, 1) + 0.05 * pow(Z, 3), 2},
      {"quintic", (X - 0.1 * Z) * circle(0, 0, 1) * circle(0.2, 0.1, 2.5) + 0.05 * pow(Z, 5), 3},
  };
}

}  // namespace corpus
