#pragma once

#include <optional>

#include "qme/core.hpp"

namespace qme {

struct QmeCoefficients {
  CMatrix l1;
  CMatrix l0;
};

/// det(S1 - S2) != 0, decided by sigma_min(S1 - S2) > rank_rel * sigma_max.
bool is_complete_pair(const CMatrix& s1, const CMatrix& s2,
                      const TolerancePolicy& tol = {});

/// L1 = (S1^2 - S2^2)(S1 - S2)^{-1},
/// L0 = S2^2 (S1 - S2)^{-1} S1 - S1^2 (S1 - S2)^{-1} S2.
/// Throws kNotComplete when the pair is not complete.
QmeCoefficients coefficients_from_pair(const CMatrix& s1, const CMatrix& s2,
                                       const TolerancePolicy& tol = {});

enum class PairKind { kUnique, kImpossible, kInfinite };

const char* to_string(PairKind kind);

struct PairClassification {
  PairKind kind = PairKind::kImpossible;
  /// Unique: the coefficients. Infinite: one particular member of the family.
  std::optional<QmeCoefficients> coefficients;
  /// Infinite only: P = E - D D^+ with D = S1 - S2. Every member is
  /// L1 = L1_particular + Z P, L0 = S1^2 - L1 S1.
  std::optional<CMatrix> freedom;
  /// ||B D^+ D - B||_F with B = S1^2 - S2^2 (zero for complete pairs).
  double consistency_residual = 0.0;
  double consistency_bound = 0.0;
  /// Copies of the inputs so family members can be generated.
  CMatrix s1;
  CMatrix s2;

  /// Infinite only: the family member selected by an arbitrary n x n `z`.
  QmeCoefficients family_member(const CMatrix& z) const;
};

PairClassification classify_pair(const CMatrix& s1, const CMatrix& s2,
                                 const TolerancePolicy& tol = {});

}  // namespace qme
