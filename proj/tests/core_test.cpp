#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qme/core.hpp"
#include "qme/linalg.hpp"
#include "qme/matrix_io.hpp"

namespace qme {
namespace {

using namespace qme::testing;

TEST(Residual, TriangularExampleVanishes) {
  const auto f = triangular_2x2();
  const QmeProblem problem(f.l0, f.l1);
  EXPECT_LE(residual(problem, f.solvent).norm(), 1e-15);
}

TEST(Residual, NullProblem) {
  const QmeProblem problem(Mat::Zero(2, 2), Mat::Zero(2, 2));
  EXPECT_EQ(residual(problem, Mat::Zero(2, 2)).norm(), 0.0);
}

TEST(Residual, DiagonalHandCheck) {
  const QmeProblem problem(diag({-3.0, -8.0}), diag({4.0, 6.0}));
  EXPECT_EQ(residual(problem, diag({1.0, 2.0})).norm(), 0.0);
}

TEST(Residual, MatchesDirectFormula) {
  Rng rng(11);
  for (int n = 1; n <= 5; ++n) {
    const Mat l0 = rng.matrix(n), l1 = rng.matrix(n), x = rng.matrix(n);
    const QmeProblem problem(l0, l1);
    EXPECT_LE((residual(problem, x) - qme_residual(l0, l1, x)).norm(), 1e-12);
  }
}

TEST(IsSolvent, Fixtures) {
  const auto f = triangular_2x2();
  EXPECT_TRUE(is_solvent(QmeProblem(f.l0, f.l1), f.solvent).is_solvent);

  EXPECT_TRUE(is_solvent(QmeProblem(Mat::Zero(2, 2), eye(2)), eye(2)).is_solvent);

  const auto g = permutation_3x3();
  EXPECT_TRUE(is_solvent(QmeProblem(g.l0, g.l1), g.solvent).is_solvent);
}

TEST(IsSolvent, RejectsPerturbation) {
  const auto f = triangular_2x2();
  Mat x = f.solvent;
  x(0, 1) += 1e-3;
  const SolventCheck c = is_solvent(QmeProblem(f.l0, f.l1), x);
  EXPECT_FALSE(c.is_solvent);
  EXPECT_GT(c.residual_norm, c.bound);
}

TEST(IsSolvent, BoundIsScaleInvariant) {
  // Scaling X by s and the coefficients consistently (L1 by s, L0 by s^2)
  // scales the residual by s^2; the verdict must not change for large s.
  const auto f = triangular_2x2();
  for (double s : {1e-3, 1.0, 1e4}) {
    const QmeProblem p(s * s * f.l0, s * f.l1);
    EXPECT_TRUE(is_solvent(p, s * f.solvent).is_solvent) << s;
  }
}

TEST(IsSolvent, ShapeMismatch) {
  const QmeProblem problem(eye(2), eye(2));
  try {
    is_solvent(problem, eye(3));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(QmeProblem, Validation) {
  EXPECT_THROW(QmeProblem(eye(2), eye(3)), Error);
  EXPECT_THROW(QmeProblem(Mat::Zero(2, 3), Mat::Zero(2, 3)), Error);
  Mat bad = eye(2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(QmeProblem(bad, eye(2)), Error);
  TolerancePolicy tol;
  tol.rel_residual = 2.0;
  EXPECT_THROW(QmeProblem(eye(2), eye(2), tol), Error);
}

TEST(SubordinateNorm, Examples) {
  EXPECT_NEAR(subordinate_norm(eye(3)), 1.0, 1e-15);
  EXPECT_NEAR(subordinate_norm(diag({3.0, -5.0})), 5.0, 1e-14);
  Mat n(2, 2);
  n << 0.0, 2.0, 0.0, 0.0;
  EXPECT_NEAR(subordinate_norm(n), 2.0, 1e-14);
}

TEST(SubordinateNorm, IsInducedByVectorNorm) {
  Rng rng(5);
  const Mat m = rng.matrix(4);
  const double norm = subordinate_norm(m);
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXcd v = rng.matrix(4).col(0);
    EXPECT_LE((m * v).norm(), norm * v.norm() * (1 + 1e-12));
  }
}

TEST(Linalg, PseudoInverseAndNullSpace) {
  Mat d = Mat::Constant(3, 3, 2.0);
  const Mat p = linalg::pseudo_inverse(d, 1e-10);
  EXPECT_LE((d * p * d - d).norm(), 1e-12);
  EXPECT_LE((p * d * p - p).norm(), 1e-12);
  const Mat k = linalg::null_space(d, 1e-10, linalg::spectral_norm(d));
  EXPECT_EQ(k.cols(), 2);
  EXPECT_LE((d * k).norm(), 1e-12);
  EXPECT_EQ(linalg::binomial(12, 6), 924u);
}

class MatrixFile : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qme_core_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  std::filesystem::path dir_;
};

TEST_F(MatrixFile, RoundTripIsBitExact) {
  Mat m = diag({1.0, Complex(2.0, 3.0)});
  m(0, 1) = Complex(1.0 / 3.0, -std::sqrt(2.0));
  const auto path = (dir_ / "m.json").string();
  store_matrix(m, path);
  const Mat back = load_matrix(path);
  ASSERT_EQ(back.rows(), 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(back(i, j), m(i, j));
}

TEST_F(MatrixFile, ParseErrors) {
  auto code_of = [&](const std::string& text) {
    try {
      load_matrix(write("x.json", text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNumericalFailure;
  };
  EXPECT_EQ(code_of(R"({"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0]]})"),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of(R"({"rows":1,"cols":1,"data":[["NaN",0]]})"),
            ErrorCode::kParseError);
  EXPECT_EQ(code_of(R"({"rows":1,"cols":1,"data":[[1]]})"), ErrorCode::kParseError);
  EXPECT_EQ(code_of(R"({"rows":1,"cols":1,"data":[[NaN,0]]})"), ErrorCode::kParseError);
  EXPECT_EQ(code_of("not json"), ErrorCode::kParseError);
  try {
    load_matrix((dir_ / "missing.json").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

}  // namespace
}  // namespace qme
