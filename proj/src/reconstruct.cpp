#include "qme/reconstruct.hpp"

#include "qme/linalg.hpp"

namespace qme {
namespace {

void require_pair(const CMatrix& s1, const CMatrix& s2) {
  require_square(s1, "S1");
  require_square(s2, "S2");
  if (s1.rows() != s2.rows()) {
    fail(ErrorCode::kDimensionMismatch,
         "S1 and S2 must have equal dimension, got " +
             std::to_string(s1.rows()) + " and " + std::to_string(s2.rows()));
  }
  require_finite(s1, "S1");
  require_finite(s2, "S2");
}

QmeCoefficients pair_coefficients(const CMatrix& s1, const CMatrix& s2) {
  const CMatrix d = s1 - s2;
  const CMatrix s1sq = s1 * s1;
  const CMatrix s2sq = s2 * s2;
  const auto lu = d.partialPivLu();
  QmeCoefficients out;
  out.l1 = linalg::solve_right(s1sq - s2sq, d);
  out.l0 = s2sq * lu.solve(s1) - s1sq * lu.solve(s2);
  return out;
}

}  // namespace

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::kUnique: return "Unique";
    case PairKind::kImpossible: return "Impossible";
    case PairKind::kInfinite: return "Infinite";
  }
  return "Unknown";
}

bool is_complete_pair(const CMatrix& s1, const CMatrix& s2,
                      const TolerancePolicy& tol) {
  require_pair(s1, s2);
  return linalg::is_invertible(s1 - s2, tol.rank_rel);
}

QmeCoefficients coefficients_from_pair(const CMatrix& s1, const CMatrix& s2,
                                       const TolerancePolicy& tol) {
  if (!is_complete_pair(s1, s2, tol)) {
    fail(ErrorCode::kNotComplete, "S1 - S2 is singular");
  }
  return pair_coefficients(s1, s2);
}

QmeCoefficients PairClassification::family_member(const CMatrix& z) const {
  if (kind != PairKind::kInfinite) {
    fail(ErrorCode::kInvalidArgument,
         "family members exist only for Infinite classifications");
  }
  if (z.rows() != s1.rows() || z.cols() != s1.cols()) {
    fail(ErrorCode::kDimensionMismatch, "Z must match the pair dimension");
  }
  QmeCoefficients out;
  out.l1 = coefficients->l1 + z * (*freedom);
  out.l0 = s1 * s1 - out.l1 * s1;
  return out;
}

PairClassification classify_pair(const CMatrix& s1, const CMatrix& s2,
                                 const TolerancePolicy& tol) {
  require_pair(s1, s2);
  PairClassification out;
  out.s1 = s1;
  out.s2 = s2;
  if (linalg::is_invertible(s1 - s2, tol.rank_rel)) {
    out.kind = PairKind::kUnique;
    out.coefficients = pair_coefficients(s1, s2);
    return out;
  }

  // L1 D = B is solvable iff B D^+ D = B; the particular solution is B D^+.
  const Eigen::Index n = s1.rows();
  const CMatrix d = s1 - s2;
  const CMatrix b = s1 * s1 - s2 * s2;
  const CMatrix d_pinv = linalg::pseudo_inverse(d, tol.rank_rel);
  QmeCoefficients particular;
  particular.l1 = b * d_pinv;
  particular.l0 = s1 * s1 - particular.l1 * s1;

  // With L0 fixed by S1, the S2 residual equals L1 D - B, so the consistency
  // test uses the same gate as is_solvent for S2.
  const QmeProblem problem(particular.l0, particular.l1, tol);
  const SolventCheck s2_check = is_solvent(problem, s2);
  out.consistency_residual = (particular.l1 * d - b).norm();
  out.consistency_bound = s2_check.bound;
  if (out.consistency_residual > out.consistency_bound) {
    out.kind = PairKind::kImpossible;
    return out;
  }
  if (!s2_check.is_solvent || !is_solvent(problem, s1).is_solvent) {
    fail(ErrorCode::kNumericalFailure,
         "consistent system but the particular QME rejects a solvent");
  }
  out.kind = PairKind::kInfinite;
  out.coefficients = std::move(particular);
  out.freedom = identity(n) - d * d_pinv;
  return out;
}

}  // namespace qme
