#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "corpus.hpp"
#include "harnack/ensemble/polynomial.hpp"
#include "harnack/topology/bernstein.hpp"
#include "harnack/topology/count.hpp"
#include "harnack/topology/grid_oracle.hpp"
#include "harnack/topology/interval.hpp"
#include "harnack/topology/maximality.hpp"

using namespace harnack;

namespace {

Matrix3 random_rotation(std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = nd(g);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
  Eigen::Matrix3d q = qr.householderQ();
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = q(i, j);
  return m;
}

std::vector<double> coefficients(const corpus::Poly& p) { return p.coefficients(); }

double eval_real(const MonomialBasis& b, const std::vector<double>& c, std::array<double, 3> x) {
  return b.evaluate_polynomial<double>(c, x);
}

}  // namespace

TEST(Genus, Examples) {
  EXPECT_EQ(genus(1), 0);
  EXPECT_EQ(genus(3), 1);
  EXPECT_EQ(genus(6), 10);
  EXPECT_THROW(genus(0), config_error);
}

TEST(HarnackBound, Examples) {
  EXPECT_EQ(harnack_bound(2), 1);
  EXPECT_EQ(harnack_bound(4), 4);
  EXPECT_EQ(harnack_bound(5), 7);
}

TEST(Interval, OperationsEncloseRealResults) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-3, 3), t(0, 1);
  for (int k = 0; k < 2000; ++k) {
    double a0 = u(g), a1 = a0 + t(g), b0 = u(g), b1 = b0 + t(g);
    Interval a(a0, a1), b(b0, b1);
    double x = a0 + t(g) * (a1 - a0), y = b0 + t(g) * (b1 - b0);
    Interval s = a + b, d = a - b, p = a * b, q = divide(a, 3.0);
    EXPECT_LE(s.lo, x + y);
    EXPECT_GE(s.hi, x + y);
    EXPECT_LE(d.lo, x - y);
    EXPECT_GE(d.hi, x - y);
    EXPECT_LE(p.lo, x * y);
    EXPECT_GE(p.hi, x * y);
    EXPECT_LE(q.lo, x / 3.0);
    EXPECT_GE(q.hi, x / 3.0);
  }
}

TEST(Bernstein, EnclosesSampledValues) {
  std::mt19937_64 g(9);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> unit(0, 1);
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<Interval>> c(n + 1, std::vector<Interval>(n + 1, Interval(0.0)));
    std::vector<std::vector<double>> cd(n + 1, std::vector<double>(n + 1, 0.0));
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q) c[p][q] = Interval(cd[p][q] = nd(g));
    double u0 = -0.75, u1 = 0.5, v0 = -1.0, v1 = -0.125;
    auto net = BernsteinNet::from_power(n, c, u0, u1, v0, v1);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        lo = std::min(lo, net.at(i, j).lo);
        hi = std::max(hi, net.at(i, j).hi);
      }
    // corner coefficients are the corner values
    auto value = [&](double u, double v) {
      double s = 0.0;
      for (int p = 0; p <= n; ++p)
        for (int q = 0; p + q <= n; ++q) s += cd[p][q] * std::pow(u, p) * std::pow(v, q);
      return s;
    };
    EXPECT_TRUE(net.at(0, 0).lo <= value(u0, v0) + 1e-12 && value(u0, v0) - 1e-12 <= net.at(0, 0).hi);
    EXPECT_TRUE(net.at(n, n).lo <= value(u1, v1) + 1e-12 && value(u1, v1) - 1e-12 <= net.at(n, n).hi);
    for (int k = 0; k < 500; ++k) {
      double u = u0 + (u1 - u0) * unit(g), v = v0 + (v1 - v0) * unit(g);
      double x = value(u, v);
      ASSERT_GE(x, lo - 1e-12);
      ASSERT_LE(x, hi + 1e-12);
    }
  }
}

TEST(Bernstein, SubdivisionMatchesDirectConversion) {
  auto p = corpus::circle(0.3, -0.2, 0.9) * (corpus::X + 0.5 * corpus::Y);
  MonomialBasis b(3);
  auto mono = coefficients(p);
  SphereCell root{2, 0, 0, 0};
  auto net = detail::cell_net(b, mono, root);
  auto kids = net.quarter();
  auto cells = root.children();
  for (int k = 0; k < 4; ++k) {
    auto direct = detail::cell_net(b, mono, cells[k]);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j) {
        // both are enclosures of the same exact coefficient
        EXPECT_LE(kids[k].at(i, j).lo, direct.at(i, j).hi);
        EXPECT_GE(kids[k].at(i, j).hi, direct.at(i, j).lo);
        EXPECT_LT(kids[k].at(i, j).width(), 1e-12);
      }
  }
}

TEST(SphereCell, ChildrenTileParent) {
  SphereCell c{4, 3, 5, 2};
  auto kids = c.children();
  double area = 0.0;
  for (const auto& k : kids) {
    EXPECT_EQ(k.depth, 4);
    EXPECT_GE(k.u_lo(), c.u_lo());
    EXPECT_LE(k.u_hi(), c.u_hi());
    EXPECT_GE(k.v_lo(), c.v_lo());
    EXPECT_LE(k.v_hi(), c.v_hi());
    area += k.width() * k.width();
  }
  EXPECT_DOUBLE_EQ(area, c.width() * c.width());
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      double ou = std::min(kids[a].u_hi(), kids[b].u_hi()) - std::max(kids[a].u_lo(), kids[b].u_lo());
      double ov = std::min(kids[a].v_hi(), kids[b].v_hi()) - std::max(kids[a].v_lo(), kids[b].v_lo());
      EXPECT_LE(std::min(ou, ov), 0.0);  // overlap has empty interior
    }
}

TEST(SphereCell, CubeCoordinatesRoundTrip) {
  for (int f = 0; f < kFaces; ++f) {
    auto p = cube_point(f, 0.25, -0.5);
    EXPECT_EQ(std::abs(p[f % 3]), 1.0);
    auto uv = face_coords(f, p);
    EXPECT_EQ(uv[0], 0.25);
    EXPECT_EQ(uv[1], -0.5);
    auto q = cube_point(SphereCell{f, 0, 0, 0}.antipode().face, 0.25, -0.5);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(q[k], -p[k]);
  }
}

TEST(SignCertify, PositiveDefiniteFormOnEveryCell) {
  MonomialBasis b(2);
  auto pos = coefficients(corpus::pow(corpus::X, 2) + corpus::pow(corpus::Y, 2) + corpus::pow(corpus::Z, 2));
  std::vector<double> neg(pos);
  for (double& v : neg) v = -v;
  for (int f = 0; f < kFaces; ++f)
    for (int d = 0; d <= 3; ++d)
      for (std::uint32_t i = 0; i < (1u << d); ++i)
        for (std::uint32_t j = 0; j < (1u << d); ++j) {
          SphereCell c{f, d, i, j};
          ASSERT_EQ(sign_certify(b, pos, c), CellSign::all_positive);
          ASSERT_EQ(sign_certify(b, neg, c), CellSign::all_negative);
        }
}

TEST(SignCertify, SignChangeIsUnknown) {
  MonomialBasis b(1);
  std::vector<double> z = coefficients(corpus::Z);
  // face +x is the plane x = 1; z changes sign across its middle
  EXPECT_EQ(sign_certify(b, z, SphereCell{0, 0, 0, 0}), CellSign::unknown);
  EXPECT_EQ(sign_certify(b, z, SphereCell{2, 0, 0, 0}), CellSign::all_positive);
  EXPECT_EQ(sign_certify(b, z, SphereCell{5, 0, 0, 0}), CellSign::all_negative);
}

TEST(SignCertify, SectionInterface) {
  auto onb = make_orthonormal_basis(2, Weight::fubini_study());
  auto s = section_from_monomials(onb, coefficients(corpus::pow(corpus::X, 2) + corpus::pow(corpus::Y, 2) +
                                                   corpus::pow(corpus::Z, 2)));
  EXPECT_EQ(sign_certify(s, onb, SphereCell{1, 2, 1, 3}), CellSign::all_positive);
}

TEST(CountComponents, ClassicalCorpus) {
  for (const auto& c : corpus::classical_curves()) {
    MonomialBasis b(c.poly.degree());
    auto r = count_components(b, coefficients(c.poly), 12);
    EXPECT_TRUE(r.certified) << c.name << ": " << r.diagnostic;
    EXPECT_EQ(r.b0, c.b0) << c.name;
    EXPECT_EQ(r.unresolved_cells, 0) << c.name;
    EXPECT_LE(r.b0, harnack_bound(c.poly.degree())) << c.name;
    EXPECT_EQ(r.pseudolines, c.poly.degree() % 2) << c.name;
  }
}

TEST(CountComponents, AgreesWithGridOracleOnSphere) {
  for (const auto& c : corpus::classical_curves()) {
    MonomialBasis b(c.poly.degree());
    auto mono = coefficients(c.poly);
    auto r = count_components(b, mono, 12);
    auto o = grid_oracle(b, mono, 1024);
    EXPECT_EQ(r.sphere_components, o.sphere_components) << c.name;
    EXPECT_EQ(r.b0, o.b0) << c.name;
  }
}

TEST(CountComponents, RotationInvariance) {
  std::mt19937_64 g(31);
  for (const auto& c : corpus::classical_curves()) {
    MonomialBasis b(c.poly.degree());
    auto mono = coefficients(c.poly);
    for (int t = 0; t < 10; ++t) {
      auto rotated = substitute_linear<double>(b, mono, random_rotation(g));
      auto r = count_components(b, rotated, 12);
      ASSERT_TRUE(r.certified) << c.name << " rotation " << t << ": " << r.diagnostic;
      ASSERT_EQ(r.b0, c.b0) << c.name << " rotation " << t;
    }
  }
}

TEST(CountComponents, SectionInterfaceMatchesMonomials) {
  auto onb = make_orthonormal_basis(3, Weight::fubini_study());
  auto cubic = corpus::classical_curves()[5];
  ASSERT_EQ(cubic.name, "maximal cubic");
  auto s = section_from_monomials(onb, coefficients(cubic.poly));
  EXPECT_EQ(count_components(s, onb, 12).b0, 2);
}

TEST(CountComponents, HarnackKleinOnRandomSamples) {
  for (int n = 1; n <= 6; ++n) {
    auto onb = make_orthonormal_basis(n, Weight::fubini_study());
    for (int t = 0; t < 200; ++t) {
      auto r = count_components(sample_section(onb, SubGaussianSampler(), 77, t), onb, 12);
      if (r.certified) {
        ASSERT_LE(r.b0, harnack_bound(n));
        ASSERT_EQ(r.unresolved_cells, 0);
      }
    }
  }
}

TEST(CountComponents, DeeperLimitNeverFlipsCertifiedCount) {
  for (int n : {3, 4, 5}) {
    auto onb = make_orthonormal_basis(n, Weight::fubini_study());
    for (int t = 0; t < 100; ++t) {
      auto s = sample_section(onb, SubGaussianSampler(), 123, t);
      auto shallow = count_components(s, onb, 6);
      auto deep = count_components(s, onb, 12);
      if (shallow.certified) {
        ASSERT_TRUE(deep.certified);
        ASSERT_EQ(shallow.b0, deep.b0);
      }
    }
  }
}

TEST(CountComponents, SingularCurvesAreNotCertified) {
  using namespace corpus;
  // two crossing lines and a double line
  for (const Poly& p : {(X - 0.3 * Z) * (Y + 0.2 * Z), pow(X - 0.1 * Y, 2)}) {
    MonomialBasis b(p.degree());
    auto r = count_components(b, coefficients(p), 10);
    EXPECT_FALSE(r.certified);
    EXPECT_GT(r.unresolved_cells, 0);
    EXPECT_FALSE(r.diagnostic.empty());
  }
}

TEST(CountComponents, ValidatesArguments) {
  MonomialBasis b(1);
  std::vector<double> x = coefficients(corpus::X);
  EXPECT_THROW(count_components(b, x, 3), config_error);
  EXPECT_THROW(count_components(b, x, 21), config_error);
  EXPECT_THROW(count_components(b, std::vector<double>{1.0, 0.0}, 8), config_error);
}

TEST(ClassifyMaximality, Examples) {
  TopologyReport r;
  r.certified = true;
  r.degree = 3;
  r.b0 = 2;
  auto v = classify_maximality(r, 0.1);
  EXPECT_NEAR(v.threshold, 1.7, 1e-12);
  EXPECT_TRUE(v.in_M);
  EXPECT_EQ(v.deficit, 0);
  r.b0 = 1;
  v = classify_maximality(r, 0.1);
  EXPECT_FALSE(v.in_M);
  EXPECT_EQ(v.deficit, 1);
  r.degree = 2;
  r.b0 = 0;
  v = classify_maximality(r, 0.5);
  EXPECT_NEAR(v.threshold, 0.0, 1e-12);
  EXPECT_TRUE(v.in_M);
}

TEST(ClassifyMaximality, RefusesUncertifiedReports) {
  TopologyReport r;
  r.degree = 3;
  r.b0 = 1;
  r.certified = false;
  EXPECT_THROW(classify_maximality(r, 0.1), certification_error);
  r.certified = true;
  EXPECT_THROW(classify_maximality(r, 0.0), config_error);
}

TEST(GridOracle, SimpleCurves) {
  using namespace corpus;
  MonomialBasis b1(1), b2(2);
  EXPECT_EQ(grid_oracle(b1, coefficients(X), 256).b0, 1);
  EXPECT_EQ(grid_oracle(b2, coefficients(circle(0, 0, 1)), 256).sign_regions, 3);
  EXPECT_EQ(grid_oracle(b2, coefficients(pow(X, 2) + pow(Y, 2) + pow(Z, 2)), 256).b0, 0);
}

TEST(SubstituteLinear, MatchesPointEvaluation) {
  std::mt19937_64 g(4);
  std::normal_distribution<double> nd;
  MonomialBasis b(4);
  std::vector<double> c(b.size());
  for (double& v : c) v = nd(g);
  Matrix3 m = random_rotation(g);
  m[0][1] += 0.3;
  auto sub = substitute_linear<double>(b, c, m);
  for (int t = 0; t < 20; ++t) {
    std::array<double, 3> x{nd(g), nd(g), nd(g)}, mx{};
    for (int k = 0; k < 3; ++k) mx[k] = m[k][0] * x[0] + m[k][1] * x[1] + m[k][2] * x[2];
    EXPECT_NEAR(eval_real(b, sub, x), eval_real(b, c, mx), 1e-10 * (1 + std::abs(eval_real(b, c, mx))));
  }
}
