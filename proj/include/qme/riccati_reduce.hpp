#pragma once

#include <optional>
#include <string>

#include "qme/core.hpp"
#include "qme/spectral_solve.hpp"

namespace qme {

/// Z A Z + B Z + Z C + D = 0.
struct RiccatiProblem {
  CMatrix a;
  CMatrix b;
  CMatrix c;
  CMatrix d;
};

CMatrix riccati_residual(const RiccatiProblem& r, const CMatrix& z);
SolventCheck check_riccati_solution(const RiccatiProblem& r, const CMatrix& z,
                                    double rel_residual = 1e-9);

/// Y^2 + L1~ Y + Y L1'~ + L0~ = 0.
struct BilateralProblem {
  CMatrix l1;
  CMatrix l1_prime;
  CMatrix l0;
};

CMatrix bilateral_residual(const BilateralProblem& q, const CMatrix& y);
SolventCheck check_bilateral_solution(const BilateralProblem& q,
                                      const CMatrix& y,
                                      double rel_residual = 1e-9);

/// Affine correspondence between canonical solvents X and original unknowns:
///   Y = -shift - X,   Z = Y * right   (right omitted for bilateral forms).
struct BackMap {
  CMatrix shift;
  std::optional<CMatrix> right;
  /// Inverse of `right`, used by the forward map Z -> X.
  std::optional<CMatrix> right_inverse;
};

class ReductionTrace {
 public:
  ReductionTrace(QmeProblem canonical, BackMap back_map)
      : canonical_(std::move(canonical)), back_map_(std::move(back_map)) {}

  const QmeProblem& canonical() const { return canonical_; }
  const BackMap& back_map() const { return back_map_; }

  /// Canonical solvent X -> solution of the original equation.
  CMatrix to_original(const CMatrix& x) const;
  /// Original solution -> canonical solvent.
  CMatrix to_canonical(const CMatrix& z) const;

  std::string describe() const;

 private:
  QmeProblem canonical_;
  BackMap back_map_;
};

/// Z = Y A^{-1} gives a bilateral equation with L1~ = B, L1'~ = A^{-1} C A,
/// L0~ = D A, which reduce_bqme then maps to canonical form.
/// Throws kSingularA unless A passes the rank_rel invertibility gate.
ReductionTrace reduce_riccati(const RiccatiProblem& r,
                              const TolerancePolicy& tol = {});

/// X = -L1'~ - Y gives L1 = L1~ - L1'~, L0 = L1~ L1'~ - L0~.
ReductionTrace reduce_bqme(const CMatrix& l1t, const CMatrix& l1pt,
                           const CMatrix& l0t, const TolerancePolicy& tol = {});

/// Left equation Y^2 + Y L1'~ + L0~ = 0 (the bilateral form with L1~ = 0).
ReductionTrace reduce_lqme(const CMatrix& l1pt, const CMatrix& l0t,
                           const TolerancePolicy& tol = {});

/// Solutions Y of Y^2 + L1~ Y + Y L1~ + L0~ = 0 through the diagonalizable
/// square roots X of L1~^2 - L0~, Y = -L1~ - X.
SolventSet solve_sbqme(const CMatrix& l1t, const CMatrix& l0t,
                       const TolerancePolicy& tol = {},
                       const SolveOptions& options = {});

}  // namespace qme
