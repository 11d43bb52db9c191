#pragma once

#include "qme/core.hpp"
#include "qme/symfun.hpp"

namespace qme {

/// Chebyshev polynomial of the second kind, U_{p+1} = 2x U_p - U_{p-1}.
/// Accepts p >= -1 with U_{-1} = 0.
Complex chebyshev_u(int p, Complex x);

/// Same recurrence in matrix arithmetic.
CMatrix chebyshev_u_matrix(int p, const CMatrix& m);

struct ChebyshevEval {
  int p = 0;
  /// (1/2) L1 (-L0)^{-1/2}
  CMatrix argument;
  CMatrix value;
};

/// U_p evaluated at the commuting-case argument of `problem`.
ChebyshevEval chebyshev_at_argument(const QmeProblem& problem, int p);

/// V diag(sqrt(lambda_i)) V^{-1} on the principal branch.
/// Throws kNotDiagonalizable if cond(V) >= 1/rank_rel, kSingularMatrix if an
/// eigenvalue vanishes.
CMatrix principal_sqrt(const CMatrix& m, const TolerancePolicy& tol = {});

/// ||L0 L1 - L1 L0||_F
double commutator_norm(const QmeProblem& problem);

/// ||[L0, L1]||_F <= 1e-10 ||L0||_F ||L1||_F
bool coefficients_commute(const QmeProblem& problem);

/// alpha_p = -(-L0)^{p/2} U_{p-2}[arg], beta_p = (-L0)^{(p-1)/2} U_{p-1}[arg]
/// for p >= 2, exact boundary values for p = 0, 1.
/// Throws kNotCommuting, kNotDiagonalizable or kSingularMatrix.
AlphaBeta alpha_beta_closed(const QmeProblem& problem, int p);

/// beta_p S + alpha_p from the closed forms. Also throws kNotASolvent.
CMatrix power_closed(const QmeProblem& problem, const CMatrix& s, int p);

}  // namespace qme
