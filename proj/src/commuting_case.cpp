#include "qme/commuting_case.hpp"

#include <cmath>
#include <string>

#include "qme/linalg.hpp"

namespace qme {
namespace {

void require_degree(int p) {
  if (p < -1) fail(ErrorCode::kInvalidArgument, "Chebyshev degree must be >= -1");
}

struct CommutingParts {
  CMatrix root;          // (-L0)^{1/2}
  CMatrix argument;      // (1/2) L1 (-L0)^{-1/2}
};

CommutingParts commuting_parts(const QmeProblem& problem) {
  if (!coefficients_commute(problem)) {
    fail(ErrorCode::kNotCommuting,
         "||[L0, L1]||_F = " + std::to_string(commutator_norm(problem)));
  }
  CommutingParts out;
  out.root = principal_sqrt(-problem.l0(), problem.tol());
  out.argument = 0.5 * linalg::solve_right(problem.l1(), out.root);
  return out;
}

}  // namespace

Complex chebyshev_u(int p, Complex x) {
  require_degree(p);
  if (p == -1) return 0.0;
  Complex prev = 0.0;  // U_{-1}
  Complex cur = 1.0;   // U_0
  for (int k = 0; k < p; ++k) {
    const Complex next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

CMatrix chebyshev_u_matrix(int p, const CMatrix& m) {
  require_degree(p);
  require_square(m, "Chebyshev argument");
  const Eigen::Index n = m.rows();
  if (p == -1) return CMatrix::Zero(n, n);
  CMatrix prev = CMatrix::Zero(n, n);
  CMatrix cur = identity(n);
  for (int k = 0; k < p; ++k) {
    CMatrix next = 2.0 * m * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ChebyshevEval chebyshev_at_argument(const QmeProblem& problem, int p) {
  CommutingParts parts = commuting_parts(problem);
  ChebyshevEval out;
  out.p = p;
  out.value = chebyshev_u_matrix(p, parts.argument);
  out.argument = std::move(parts.argument);
  return out;
}

CMatrix principal_sqrt(const CMatrix& m, const TolerancePolicy& tol) {
  require_square(m, "matrix");
  require_finite(m, "matrix");
  Eigen::ComplexEigenSolver<CMatrix> es(m, true);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::kEigFailure, "eigendecomposition did not converge");
  }
  const CMatrix& v = es.eigenvectors();
  const double cond = linalg::condition_number(v);
  if (!(cond < 1.0 / tol.rank_rel)) {
    fail(ErrorCode::kNotDiagonalizable,
         "eigenvector condition number " + std::to_string(cond));
  }
  const double scale = linalg::spectral_norm(m);
  CVector roots(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Complex lambda = es.eigenvalues()(i);
    if (std::abs(lambda) <= tol.rank_rel * scale || scale == 0.0) {
      fail(ErrorCode::kSingularMatrix, "zero eigenvalue has no inverse root");
    }
    // -0.0 imaginary parts would flip std::sqrt onto the other branch.
    if (lambda.imag() == 0.0) lambda = Complex(lambda.real(), 0.0);
    roots(i) = std::sqrt(lambda);
  }
  return linalg::solve_right(v * roots.asDiagonal(), v);
}

double commutator_norm(const QmeProblem& problem) {
  return (problem.l0() * problem.l1() - problem.l1() * problem.l0()).norm();
}

bool coefficients_commute(const QmeProblem& problem) {
  return commutator_norm(problem) <=
         1e-10 * problem.l0().norm() * problem.l1().norm();
}

AlphaBeta alpha_beta_closed(const QmeProblem& problem, int p) {
  if (p < 0) fail(ErrorCode::kInvalidArgument, "p must be non-negative");
  const Eigen::Index n = problem.n();
  const CommutingParts parts = commuting_parts(problem);
  if (p == 0) return {0, identity(n), CMatrix::Zero(n, n)};
  if (p == 1) return {1, CMatrix::Zero(n, n), identity(n)};
  const CMatrix root_pm1 = linalg::power(parts.root, p - 1);
  AlphaBeta out;
  out.p = p;
  out.alpha = -(root_pm1 * parts.root) * chebyshev_u_matrix(p - 2, parts.argument);
  out.beta = root_pm1 * chebyshev_u_matrix(p - 1, parts.argument);
  return out;
}

CMatrix power_closed(const QmeProblem& problem, const CMatrix& s, int p) {
  const SolventCheck c = is_solvent(problem, s);
  if (!c.is_solvent) {
    fail(ErrorCode::kNotASolvent,
         "S residual " + std::to_string(c.residual_norm) + " exceeds " +
             std::to_string(c.bound));
  }
  const AlphaBeta ab = alpha_beta_closed(problem, p);
  return ab.beta * s + ab.alpha;
}

}  // namespace qme
