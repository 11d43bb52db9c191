#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qme/linalg.hpp"
#include "qme/spectral_solve.hpp"

namespace qme {
namespace {

using namespace qme::testing;

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

TEST(Companion, NullProblemIsNilpotent) {
  const QmeProblem problem(Mat::Zero(3, 3), Mat::Zero(3, 3));
  const Mat c = companion(problem);
  ASSERT_EQ(c.rows(), 6);
  EXPECT_EQ(direct_power(c, 2).norm(), 0.0);
}

TEST(Companion, DiagonalEigenvalues) {
  const QmeProblem problem(diag({-3.0, -8.0}), diag({4.0, 6.0}));
  Eigen::ComplexEigenSolver<Mat> es(companion(problem));
  std::vector<Complex> ev(es.eigenvalues().begin(), es.eigenvalues().end());
  ev = sorted(ev);
  const double expect[] = {1, 2, 3, 4};
  ASSERT_EQ(ev.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(ev[i] - expect[i]), 0.0, 1e-12);
}

TEST(Companion, CharacteristicPolynomialDegree) {
  // det(lambda E - C) = det(lambda^2 E - lambda L1 - L0): compare at a few
  // points, which pins the degree to 2n as well.
  Rng rng(3);
  const int n = 3;
  const Mat l0 = rng.matrix(n), l1 = rng.matrix(n);
  const Mat c = companion(QmeProblem(l0, l1));
  for (Complex z : {Complex(0.3, 0.1), Complex(-1.2, 0.7), Complex(2.0, -0.4)}) {
    const Complex lhs = (z * Mat::Identity(2 * n, 2 * n) - c).determinant();
    const Complex rhs = (z * z * eye(n) - z * l1 - l0).determinant();
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10 * (1 + std::abs(rhs)));
  }
}

TEST(PencilEigenpairs, DiagonalVectorsAreUnitAxes) {
  const QmeProblem problem(diag({-3.0, -8.0}), diag({4.0, 6.0}));
  const PencilEigenpairs ep = pencil_eigenpairs(problem);
  ASSERT_EQ(ep.lambdas.size(), 4u);
  EXPECT_EQ(ep.distinct_count, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& v = ep.vectors[i];
    const double big = std::max(std::abs(v(0)), std::abs(v(1)));
    const double small = std::min(std::abs(v(0)), std::abs(v(1)));
    EXPECT_NEAR(big, 1.0, 1e-12);
    EXPECT_NEAR(small, 0.0, 1e-12);
    const Complex l = ep.lambdas[i];
    EXPECT_LE(((l * l * eye(2) - l * problem.l1() - problem.l0()) * v).norm(), 1e-12);
  }
}

TEST(PencilEigenpairs, ContinuumHasTwoDimensionalFreedom) {
  const auto [l0, l1] = continuum_problem(2);
  const PencilEigenpairs ep = pencil_eigenpairs(QmeProblem(l0, l1));
  EXPECT_EQ(ep.distinct_count, 2);
  std::vector<Complex> ev = sorted(ep.lambdas);
  EXPECT_NEAR(std::abs(ev[0] + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[1] + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[2] - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[3] - 2.0), 0.0, 1e-12);
  for (int g : ep.cluster_geometric_multiplicity) EXPECT_EQ(g, 2);
}

TEST(PencilEigenpairs, Scalar) {
  const PencilEigenpairs ep =
      pencil_eigenpairs(QmeProblem(Mat::Constant(1, 1, -2.0), Mat::Constant(1, 1, 3.0)));
  const auto ev = sorted(ep.lambdas);
  EXPECT_NEAR(std::abs(ev[0] - 1.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(ev[1] - 2.0), 0.0, 1e-13);
}

TEST(EnumerateSolvents, DiagonalProblemGivesFourSolvents) {
  const QmeProblem problem(diag({-3.0, -8.0}), diag({4.0, 6.0}));
  const SolventSet set = enumerate_solvents(problem);
  EXPECT_EQ(set.candidates_tried, 6u);
  ASSERT_EQ(set.solvents.size(), 4u);
  for (const Mat& s : {diag({1.0, 2.0}), diag({1.0, 4.0}), diag({3.0, 2.0}),
                       diag({3.0, 4.0})}) {
    EXPECT_TRUE(contains(set.solvents, s, 1e-10));
  }
  const auto singular = std::count_if(
      set.diagnostics.begin(), set.diagnostics.end(),
      [](const CandidateDiagnostics& d) { return d.status == CandidateStatus::kSingularW; });
  EXPECT_EQ(singular, 2);
  EXPECT_FALSE(set.haar_satisfied);
  EXPECT_FALSE(set.infinite_family_flag);
}

TEST(EnumerateSolvents, NoSolventCase) {
  for (int n = 2; n <= 4; ++n) {
    const auto [l0, l1] = no_solvent_problem(n);
    const SolventSet set = enumerate_solvents(QmeProblem(l0, l1));
    EXPECT_TRUE(set.solvents.empty()) << "n=" << n;
  }
}

TEST(EnumerateSolvents, FiniteDiagonalFamily) {
  const auto [l0, l1] = diagonal_family_problem(2);
  const SolventSet set = enumerate_solvents(QmeProblem(l0, l1));
  ASSERT_EQ(set.solvents.size(), 4u);
  for (const Mat& s : {diag({1.0, 0.0}), diag({1.0, -1.0}), diag({-2.0, 0.0}),
                       diag({-2.0, -1.0})}) {
    EXPECT_TRUE(contains(set.solvents, s, 1e-10));
  }
}

TEST(EnumerateSolvents, ContinuumIsFlagged) {
  const auto [l0, l1] = continuum_problem(2);
  const QmeProblem problem(l0, l1);
  const SolventSet set = enumerate_solvents(problem);
  EXPECT_TRUE(set.infinite_family_flag);
  EXPECT_FALSE(set.solvents.empty());
  for (const Mat& s : set.solvents) EXPECT_LE(qme_relative(l0, l1, s), 1e-12);
}

TEST(EnumerateSolvents, OutputIsSolventsAndDeterministic) {
  Rng rng(21);
  for (int n = 2; n <= 4; ++n) {
    const Mat l0 = rng.matrix(n), l1 = rng.matrix(n);
    const QmeProblem problem(l0, l1);
    const SolventSet a = enumerate_solvents(problem);
    SolveOptions opts;
    opts.workers = 3;
    const SolventSet b = enumerate_solvents(problem, opts);
    ASSERT_EQ(a.solvents.size(), b.solvents.size());
    for (std::size_t k = 0; k < a.solvents.size(); ++k) {
      EXPECT_EQ((a.solvents[k] - b.solvents[k]).norm(), 0.0);
      EXPECT_LE(qme_relative(l0, l1, a.solvents[k]), 1e-9);
    }
    // Generic problems have 2n distinct eigenvalues in general position.
    EXPECT_TRUE(a.haar_satisfied);
    EXPECT_EQ(a.solvents.size(), linalg::binomial(2 * n, n));
  }
}

TEST(EnumerateSolvents, SizeGuard) {
  const int n = int(kMaxEnumerationDim) + 1;
  try {
    enumerate_solvents(QmeProblem(eye(n), eye(n)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeGuard);
  }
}

TEST(EnumerateSolvents, NilpotentSquareRootsOfZero) {
  // (X - E/2)^2 = 0: the only diagonalizable solvent is E/2, but a continuum
  // of non-diagonalizable ones exists.
  const Mat l1 = eye(2), l0 = -0.25 * eye(2);
  const SolventSet set = enumerate_solvents(QmeProblem(l0, l1));
  ASSERT_EQ(set.solvents.size(), 1u);
  EXPECT_LE((set.solvents[0] - 0.5 * eye(2)).norm(), 1e-10);
  EXPECT_TRUE(set.infinite_family_flag);
  Mat n(2, 2);
  n << 1.0, 1.0, -1.0, -1.0;
  EXPECT_LE(qme_relative(l0, l1, 0.5 * eye(2) + n), 1e-15);
}

TEST(Eisenfeld, Examples) {
  auto e1 = eisenfeld_predicts_solvents(QmeProblem(Mat::Zero(2, 2), eye(2)));
  EXPECT_TRUE(e1.predicts_solvents);
  EXPECT_NEAR(e1.value, 0.0, 1e-15);
  auto e2 = eisenfeld_predicts_solvents(QmeProblem(eye(2), 4.0 * eye(2)));
  EXPECT_TRUE(e2.predicts_solvents);
  EXPECT_NEAR(e2.value, 0.25, 1e-14);
  auto e3 = eisenfeld_predicts_solvents(QmeProblem(eye(2), Mat::Zero(2, 2)));
  EXPECT_FALSE(e3.predicts_solvents);
  EXPECT_TRUE(std::isinf(e3.value));
}

}  // namespace
}  // namespace qme
