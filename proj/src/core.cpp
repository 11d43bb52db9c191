#include "qme/core.hpp"

#include <cmath>
#include <string>

#include "qme/linalg.hpp"

namespace qme {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kEigFailure: return "EigFailure";
    case ErrorCode::kSizeGuard: return "SizeGuard";
    case ErrorCode::kNotComplete: return "NotComplete";
    case ErrorCode::kNotASolvent: return "NotASolvent";
    case ErrorCode::kNotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kNotCommuting: return "NotCommuting";
    case ErrorCode::kSingularA: return "SingularA";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kZeroTransmission: return "ZeroTransmission";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

void TolerancePolicy::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      fail(ErrorCode::kInvalidArgument,
           std::string(name) + " must lie in (0, 1), got " +
               std::to_string(v));
    }
  };
  check(rel_residual, "rel_residual");
  check(rank_rel, "rank_rel");
  check(eig_cluster_rel, "eig_cluster_rel");
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_finite(const CMatrix& m, const char* what) {
  if (!all_finite(m)) {
    fail(ErrorCode::kInvalidArgument,
         std::string(what) + " has a non-finite entry");
  }
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + " must be square and non-empty, got " +
             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

QmeProblem::QmeProblem(CMatrix l0, CMatrix l1, TolerancePolicy tol)
    : l0_(std::move(l0)), l1_(std::move(l1)), tol_(tol) {
  require_square(l0_, "L0");
  require_square(l1_, "L1");
  if (l0_.rows() != l1_.rows()) {
    fail(ErrorCode::kDimensionMismatch,
         "L0 is " + std::to_string(l0_.rows()) + "x" +
             std::to_string(l0_.rows()) + " but L1 is " +
             std::to_string(l1_.rows()) + "x" + std::to_string(l1_.rows()));
  }
  require_finite(l0_, "L0");
  require_finite(l1_, "L1");
  tol_.validate();
}

CMatrix residual(const QmeProblem& problem, const CMatrix& x) {
  if (x.rows() != problem.n() || x.cols() != problem.n()) {
    fail(ErrorCode::kDimensionMismatch,
         "X is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
             ", problem dimension is " + std::to_string(problem.n()));
  }
  return x * x - problem.l1() * x - problem.l0();
}

SolventCheck is_solvent(const QmeProblem& problem, const CMatrix& x) {
  const CMatrix r = residual(problem, x);
  const double xn = x.norm();
  SolventCheck out;
  out.residual_norm = r.norm();
  out.bound = problem.tol().rel_residual *
              (1.0 + problem.l0().norm() + problem.l1().norm() * xn + xn * xn);
  out.is_solvent = out.residual_norm <= out.bound;
  return out;
}

double subordinate_norm(const CMatrix& m) {
  require_square(m, "matrix");
  return linalg::spectral_norm(m);
}

}  // namespace qme
