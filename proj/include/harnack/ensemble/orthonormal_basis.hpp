#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "harnack/error.hpp"
#include "harnack/ensemble/monomial_basis.hpp"
#include "harnack/geometry/quadrature.hpp"
#include "harnack/geometry/weight.hpp"

namespace harnack {

/// Default quadrature order for degree n: exact for the degree-2n Gram
/// integrand with margin for non-polynomial weight factors.
inline int default_quadrature_order(int n) { return 2 * n + 8; }

inline constexpr double kMaxGramCondition = 1e12;

enum class OrthoMethod { cholesky, eigen };

namespace detail {

// Sum over nodes of w_i g(X_i) Re(v_i v_i^*), v_i = m(X_i) exp(-n H(X_i)).
// Real sections pair to real numbers, so only the real part is kept.
template <class G>
Eigen::MatrixXd weighted_pairing(const MonomialBasis& basis, const Weight& w,
                                 const QuadratureRule& rule, G&& node_factor) {
  const int d = basis.size();
  const int n = basis.degree();
  constexpr std::size_t kBlock = 2048;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd vr(kBlock, d), vi(kBlock, d);
  Eigen::VectorXd wt(kBlock);
  std::vector<cplx> m(d);
  for (std::size_t start = 0; start < rule.size(); start += kBlock) {
    std::size_t len = std::min(kBlock, rule.size() - start);
    for (std::size_t r = 0; r < len; ++r) {
      const Homogeneous& x = rule.unit_nodes[start + r];
      basis.evaluate<cplx>(x, m);
      double scale = std::exp(-n * w.log_norm(x));
      for (int j = 0; j < d; ++j) {
        vr(r, j) = m[j].real() * scale;
        vi(r, j) = m[j].imag() * scale;
      }
      double f = node_factor(x);
      if (!std::isfinite(f)) throw numerical_error("non-finite test function value at a quadrature node");
      wt(r) = rule.weights[start + r] * f;
    }
    auto Vr = vr.topRows(len);
    auto Vi = vi.topRows(len);
    auto W = wt.head(len).asDiagonal();
    out.noalias() += Vr.transpose() * (W * Vr);
    out.noalias() += Vi.transpose() * (W * Vi);
  }
  return 0.5 * (out + out.transpose());
}

}  // namespace detail

/// G_jk = integral of m_j conj(m_k) exp(-2n H) dV over the rule.
/// Throws numerical_error if G is not positive definite.
inline Eigen::MatrixXd gram_matrix(const MonomialBasis& basis, const Weight& w, const QuadratureRule& rule) {
  Eigen::MatrixXd g = detail::weighted_pairing(basis, w, rule, [](const Homogeneous&) { return 1.0; });
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw numerical_error("Gram matrix is not positive definite (quadrature under-resolved?)");
  return g;
}

struct Orthonormalization {
  Eigen::MatrixXd transform;  // B with B^T G B = I
  double condition = 1.0;     // eigenvalue ratio of G
};

/// Cholesky: G = L L^T, B = L^-T (upper triangular).  Eigen: B = G^-1/2.
inline Orthonormalization orthonormalize(const Eigen::MatrixXd& g, OrthoMethod method = OrthoMethod::cholesky) {
  if (g.rows() != g.cols() || g.rows() == 0) throw config_error("Gram matrix must be square and nonempty");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw config_error("Gram matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw numerical_error("Gram matrix is not positive definite");
  Orthonormalization out;
  out.condition = hi / lo;
  if (out.condition > kMaxGramCondition)
    throw numerical_error("Gram condition estimate " + std::to_string(out.condition) + " exceeds 1e12");
  const auto d = g.rows();
  if (method == OrthoMethod::cholesky) {
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) throw numerical_error("Cholesky factorization failed");
    Eigen::MatrixXd lt = llt.matrixU();  // L^T
    out.transform = lt.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(d, d));
  } else {
    Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
    out.transform = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  }
  return out;
}

/// Orthonormal basis S_j = sum_i B_ij m_i of the real degree-n sections for
/// the weighted L^2 product.  Immutable; shared read-only across trials.
struct OrthonormalBasis {
  MonomialBasis basis;
  Weight weight;
  std::shared_ptr<const QuadratureRule> rule;
  Eigen::MatrixXd gram;
  Eigen::MatrixXd transform;
  double condition = 1.0;
  OrthoMethod method = OrthoMethod::cholesky;

  int degree() const { return basis.degree(); }
  int dimension() const { return basis.size(); }

  /// Same space with B replaced by B Q.
  OrthonormalBasis rotated(const Eigen::MatrixXd& q) const {
    OrthonormalBasis out = *this;
    out.transform = transform * q;
    return out;
  }
};

inline OrthonormalBasis make_orthonormal_basis(int n, const Weight& w,
                                               std::shared_ptr<const QuadratureRule> rule = nullptr,
                                               OrthoMethod method = OrthoMethod::cholesky) {
  if (n < 1 || n > 10) throw config_error("degree must lie in 1..10");
  if (!rule) rule = std::make_shared<const QuadratureRule>(build_quadrature(default_quadrature_order(n)));
  OrthonormalBasis onb;
  onb.basis = MonomialBasis(n);
  onb.weight = w;
  onb.rule = rule;
  onb.gram = gram_matrix(onb.basis, w, *rule);
  auto o = orthonormalize(onb.gram, method);
  onb.transform = std::move(o.transform);
  onb.condition = o.condition;
  onb.method = method;
  return onb;
}

// Text exchange format:
//   harnack-gram 1
//   degree <n>
//   exponents <d>
//   <a> <b> <c>            (d lines, basis order)
//   gram <d> <d>
//   <row>                  (d lines, %.17g entries)
//   transform <d> <d>
//   <row>
namespace detail {
inline void write_matrix(std::ostream& os, const char* tag, const Eigen::MatrixXd& m) {
  os << tag << ' ' << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      os << (j ? " " : "") << buf;
    }
    os << '\n';
  }
}
inline Eigen::MatrixXd read_matrix(std::istream& is, const char* tag) {
  std::string t;
  Eigen::Index r = 0, c = 0;
  if (!(is >> t >> r >> c) || t != tag) throw config_error(std::string("expected '") + tag + "' block");
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      if (!(is >> m(i, j))) throw config_error(std::string("truncated '") + tag + "' block");
  return m;
}
}  // namespace detail

inline void write_gram(std::ostream& os, const OrthonormalBasis& onb) {
  os << "harnack-gram 1\n";
  os << "degree " << onb.degree() << '\n';
  os << "exponents " << onb.dimension() << '\n';
  for (const auto& e : onb.basis.exponents()) os << e.a << ' ' << e.b << ' ' << e.c << '\n';
  detail::write_matrix(os, "gram", onb.gram);
  detail::write_matrix(os, "transform", onb.transform);
}

struct GramExport {
  int degree = 0;
  std::vector<Exponent> exponents;
  Eigen::MatrixXd gram, transform;
};

inline GramExport read_gram(std::istream& is) {
  GramExport g;
  std::string tag;
  int version = 0, d = 0;
  if (!(is >> tag >> version) || tag != "harnack-gram" || version != 1) throw config_error("not a harnack-gram v1 file");
  if (!(is >> tag >> g.degree) || tag != "degree") throw config_error("missing degree");
  if (!(is >> tag >> d) || tag != "exponents" || d != dimension(g.degree)) throw config_error("bad exponent header");
  for (int i = 0; i < d; ++i) {
    Exponent e{};
    if (!(is >> e.a >> e.b >> e.c)) throw config_error("truncated exponent list");
    g.exponents.push_back(e);
  }
  g.gram = detail::read_matrix(is, "gram");
  g.transform = detail::read_matrix(is, "transform");
  return g;
}

}  // namespace harnack
