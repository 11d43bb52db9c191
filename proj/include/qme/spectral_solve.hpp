#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "qme/core.hpp"

namespace qme {

/// Eigenpairs of the quadratic pencil Q(lambda) = lambda^2 E - L1 lambda - L0.
///
/// Eigenvalues that numerically coincide are grouped into clusters. Each
/// cluster member receives a vector from an orthonormal basis of
/// ker Q(cluster mean); when the cluster is defective (fewer null vectors
/// than members) the basis vectors are reused, so any subset that picks more
/// members of that cluster than its geometric multiplicity has a singular W.
struct PencilEigenpairs {
  std::vector<Complex> lambdas;   // 2n entries
  std::vector<CVector> vectors;   // 2n unit-norm n-vectors, Q(lambda_i) v_i ~ 0
  std::vector<int> cluster;       // cluster index of each eigenpair
  std::vector<int> cluster_geometric_multiplicity;
  int distinct_count = 0;         // number of clusters (p)
};

enum class CandidateStatus {
  kSingularW,
  kResidualTooLarge,
  kAccepted,
  kDuplicate,
};

struct CandidateDiagnostics {
  /// Bit i set iff eigenpair i belongs to the subset.
  std::uint32_t subset_mask = 0;
  double w_condition = std::numeric_limits<double>::infinity();
  /// NaN when the candidate was rejected before forming S.
  double residual_norm = std::numeric_limits<double>::quiet_NaN();
  CandidateStatus status = CandidateStatus::kSingularW;

  std::vector<int> indices() const;
};

struct SolventSet {
  std::vector<CMatrix> solvents;
  std::uint64_t candidates_tried = 0;
  bool haar_satisfied = false;
  bool infinite_family_flag = false;
  std::vector<CandidateDiagnostics> diagnostics;
};

struct SolveOptions {
  /// Worker threads for the subset sweep; results do not depend on it.
  unsigned workers = 1;
  bool keep_diagnostics = true;
};

/// Largest dimension enumerate_solvents accepts (binom(2n, n) candidates).
inline constexpr Eigen::Index kMaxEnumerationDim = 14;

/// The 2n x 2n block matrix [[0, E], [L0, L1]].
CMatrix companion(const QmeProblem& problem);

/// Throws kEigFailure if the eigendecomposition does not converge.
PencilEigenpairs pencil_eigenpairs(const QmeProblem& problem);

/// Diagonalizable solvents S = W diag(mu) W^{-1} assembled from every
/// n-subset of pencil eigenpairs, in lexicographic subset order, deduplicated.
/// Throws kSizeGuard for n > kMaxEnumerationDim.
SolventSet enumerate_solvents(const QmeProblem& problem,
                              const SolveOptions& options = {});

struct EisenfeldResult {
  bool predicts_solvents = false;
  /// 4 ||L1^{-1}|| ||L1^{-1} L0|| in the spectral norm; +inf if L1 is singular.
  double value = std::numeric_limits<double>::infinity();
};

/// Sufficient condition for at least two solvents.
EisenfeldResult eisenfeld_predicts_solvents(const QmeProblem& problem);

}  // namespace qme
