#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qme/commuting_case.hpp"
#include "qme/symfun.hpp"

namespace qme {
namespace {

using namespace qme::testing;

double rel(const Mat& a, const Mat& b) { return (a - b).norm() / (1e-300 + b.norm()); }

// L0, L1 diagonal in a shared random basis; -L0 has eigenvalues away from 0.
QmeProblem commuting_instance(Rng& rng, int n) {
  const Mat v = rng.well_conditioned(n);
  std::vector<Complex> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = std::polar(rng.uniform(0.5, 2.0), rng.uniform(-3.1, 3.1));
    b[i] = rng.in_box(2.0);
  }
  return QmeProblem(planted(v, a), planted(v, b));
}

TEST(Chebyshev, FirstPolynomials) {
  for (Complex x : {Complex(0.3, 0.0), Complex(-1.7, 0.4), Complex(2.0, 1.0)}) {
    EXPECT_EQ(chebyshev_u(-1, x), Complex(0.0));
    EXPECT_EQ(chebyshev_u(0, x), Complex(1.0));
    EXPECT_NEAR(std::abs(chebyshev_u(1, x) - 2.0 * x), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(chebyshev_u(2, x) - (4.0 * x * x - 1.0)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(chebyshev_u(3, x) - (8.0 * x * x * x - 4.0 * x)), 0.0, 1e-12);
  }
}

TEST(Chebyshev, RecurrenceMatchesExplicitSum) {
  for (int p = 0; p <= 15; ++p) {
    for (Complex x : {Complex(0.3, 0.0), Complex(-0.9, 0.2), Complex(1.1, -0.3)}) {
      const Complex e = chebyshev_explicit(p, x);
      EXPECT_NEAR(std::abs(chebyshev_u(p, x) - e), 0.0, 1e-10 * (1 + std::abs(e))) << p;
    }
  }
  Rng rng(1);
  const Mat m = 0.5 * rng.matrix(3);
  for (int p = 0; p <= 15; ++p) {
    EXPECT_LE(rel(chebyshev_u_matrix(p, m), chebyshev_explicit(p, m)), 1e-10) << p;
  }
}

TEST(Chebyshev, SineClosedForm) {
  const double beta = std::numbers::pi / 5;
  for (int n = 1; n <= 8; ++n) {
    const double expect = std::sin(n * beta) / std::sin(beta);
    EXPECT_NEAR(chebyshev_u(n - 1, std::cos(beta)).real(), expect, 1e-13);
  }
}

TEST(Chebyshev, DiagonalFunctoriality) {
  const Mat d = diag({0.4, Complex(-1.2, 0.5)});
  for (int p = 0; p <= 6; ++p) {
    const Mat u = chebyshev_u_matrix(p, d);
    EXPECT_NEAR(std::abs(u(0, 0) - chebyshev_u(p, 0.4)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u(1, 1) - chebyshev_u(p, d(1, 1))), 0.0, 1e-12);
    EXPECT_EQ(std::abs(u(0, 1)) + std::abs(u(1, 0)), 0.0);
  }
}

TEST(PrincipalSqrt, Examples) {
  EXPECT_LE((principal_sqrt(diag({4.0, 9.0})) - diag({2.0, 3.0})).norm(), 1e-14);
  Mat j(2, 2);
  j << 0.0, 1.0, 0.0, 0.0;
  try {
    principal_sqrt(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotDiagonalizable);
  }
  try {
    principal_sqrt(diag({1.0, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularMatrix);
  }
}

TEST(PrincipalSqrt, SquaresBackAndUsesPrincipalBranch) {
  Rng rng(2);
  for (int n = 1; n <= 5; ++n) {
    const Mat m = rng.matrix(n);
    const Mat r = principal_sqrt(m);
    EXPECT_LE(rel(r * r, m), 1e-11);
    Eigen::ComplexEigenSolver<Mat> es(r);
    for (Complex z : es.eigenvalues()) EXPECT_GE(z.real(), -1e-12);
  }
  // Negative reals map onto the positive imaginary axis.
  const Mat r = principal_sqrt(diag({-4.0}));
  EXPECT_NEAR(std::abs(r(0, 0) - Complex(0.0, 2.0)), 0.0, 1e-15);
}

TEST(Commutator, Gate) {
  Rng rng(3);
  EXPECT_TRUE(coefficients_commute(commuting_instance(rng, 3)));
  EXPECT_FALSE(coefficients_commute(QmeProblem(rng.matrix(3), rng.matrix(3))));
}

TEST(AlphaBetaClosed, LowOrders) {
  Rng rng(4);
  const QmeProblem problem = commuting_instance(rng, 3);
  const AlphaBeta ab2 = alpha_beta_closed(problem, 2);
  EXPECT_LE(rel(ab2.alpha, problem.l0()), 1e-10);
  EXPECT_LE(rel(ab2.beta, problem.l1()), 1e-10);
  EXPECT_EQ((alpha_beta_closed(problem, 0).alpha - eye(3)).norm(), 0.0);
  EXPECT_EQ((alpha_beta_closed(problem, 1).beta - eye(3)).norm(), 0.0);
}

TEST(AlphaBetaClosed, ScalarPattern) {
  // L1 = 0, L0 = -1: beta_p follows U_{p-1}(0) = 1, 0, -1, 0, ...
  const QmeProblem problem(Mat::Constant(1, 1, -1.0), Mat::Zero(1, 1));
  const double expect[] = {1, 0, -1, 0, 1, 0, -1, 0};
  for (int p = 1; p <= 8; ++p) {
    EXPECT_NEAR(std::abs(alpha_beta_closed(problem, p).beta(0, 0) - expect[p - 1]), 0.0, 1e-14)
        << p;
  }
}

TEST(AlphaBetaClosed, MatchesRecursion) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const QmeProblem problem = commuting_instance(rng, 1 + trial % 4);
    const auto seq = alpha_beta_sequence(problem, 10);
    for (int p = 2; p <= 10; ++p) {
      const AlphaBeta c = alpha_beta_closed(problem, p);
      EXPECT_LE(rel(c.alpha, seq[p].alpha), 1e-8) << p;
      EXPECT_LE(rel(c.beta, seq[p].beta), 1e-8) << p;
    }
  }
}

TEST(AlphaBetaClosed, RejectsNonCommuting) {
  Rng rng(6);
  try {
    alpha_beta_closed(QmeProblem(rng.matrix(2), rng.matrix(2)), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCommuting);
  }
}

TEST(PowerClosed, MatchesProducts) {
  Rng rng(7);
  // Commuting solvent pair: S1, S2 diagonal in one basis give commuting
  // coefficients L1 = S1 + S2, L0 = -S1 S2.
  const Mat v = rng.well_conditioned(3);
  const Mat s1 = planted(v, {1.0, Complex(0.5, 1.0), -1.5});
  const Mat s2 = planted(v, {-2.0, 0.7, Complex(1.0, -1.0)});
  const QmeProblem problem(-s1 * s2, s1 + s2);
  EXPECT_LE(rel(power_closed(problem, s1, 0), eye(3)), 1e-14);
  EXPECT_LE(rel(power_closed(problem, s1, 1), s1), 1e-14);
  EXPECT_LE(rel(power_closed(problem, s1, 7), direct_power(s1, 7)), 1e-9);
  EXPECT_LE(rel(power_closed(problem, s2, 7), direct_power(s2, 7)), 1e-9);
}

TEST(PowerClosed, TransferMatrixIdentity) {
  // M^2 - 2 cos(beta) M + E = 0 with M unimodular.
  const double c = std::cos(0.7);
  Mat m(2, 2);
  m << Complex(c, 0.4), Complex(0.3, 0.2), Complex(0.3, -0.2), Complex(c, -0.4);
  // Force det(M) = 1 by construction: |m11|^2 - |m12|^2 = 1.
  const double s = std::sqrt(1.0 + std::norm(m(0, 1)) - c * c);
  m(0, 0) = Complex(c, s);
  m(1, 1) = Complex(c, -s);
  const QmeProblem problem(-eye(2), 2.0 * c * eye(2));
  for (int n = 1; n <= 12; ++n) {
    const Mat expect = chebyshev_u(n - 1, c).real() * m - chebyshev_u(n - 2, c).real() * eye(2);
    EXPECT_LE(rel(power_closed(problem, m, n), direct_power(m, n)), 1e-12);
    EXPECT_LE(rel(expect, direct_power(m, n)), 1e-12);
  }
}

}  // namespace
}  // namespace qme
