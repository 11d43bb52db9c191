#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qme/error.hpp"

namespace qme {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Numerical gates shared by every module. All fields must lie in (0, 1).
struct TolerancePolicy {
  /// Relative residual gate used by is_solvent and the identity checks.
  double rel_residual = 1e-9;
  /// Rank decisions: a singular value below rank_rel * sigma_max counts as
  /// zero, and a condition number >= 1 / rank_rel counts as singular.
  double rank_rel = 1e-10;
  /// Base tolerance for deciding that pencil eigenvalues coincide.
  double eig_cluster_rel = 1e-8;

  void validate() const;
};

bool all_finite(const CMatrix& m);

/// Throws kInvalidArgument unless every entry of `m` is finite.
void require_finite(const CMatrix& m, const char* what);

/// Throws kDimensionMismatch unless `m` is square with positive size.
void require_square(const CMatrix& m, const char* what);

CMatrix identity(Eigen::Index n);

/// A canonical right quadratic matrix equation X^2 - L1 X - L0 = 0.
class QmeProblem {
 public:
  QmeProblem(CMatrix l0, CMatrix l1, TolerancePolicy tol = {});

  const CMatrix& l0() const { return l0_; }
  const CMatrix& l1() const { return l1_; }
  Eigen::Index n() const { return l0_.rows(); }
  const TolerancePolicy& tol() const { return tol_; }

  QmeProblem with_tolerance(const TolerancePolicy& t) const {
    return QmeProblem(l0_, l1_, t);
  }

 private:
  CMatrix l0_;
  CMatrix l1_;
  TolerancePolicy tol_;
};

/// R = X^2 - L1 X - L0, evaluated exactly as written.
CMatrix residual(const QmeProblem& problem, const CMatrix& x);

struct SolventCheck {
  bool is_solvent = false;
  double residual_norm = 0.0;
  /// The threshold the residual norm was compared against.
  double bound = 0.0;
};

/// Relative residual gate:
///   ||R||_F <= rel_residual * (1 + ||L0||_F + ||L1||_F ||X||_F + ||X||_F^2).
SolventCheck is_solvent(const QmeProblem& problem, const CMatrix& x);

/// Induced 2-norm (largest singular value).
double subordinate_norm(const CMatrix& m);

}  // namespace qme
