#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qme/core.hpp"

namespace qme {

/// Coefficients of the solution Y_p = alpha_p A + beta_p B of
/// Y_{p+2} = L0 Y_p + L1 Y_{p+1}, Y_0 = A, Y_1 = B.
struct AlphaBeta {
  int p = 0;
  CMatrix alpha;
  CMatrix beta;
};

/// Sum over every distinct word with u copies of L0 and v copies of L1.
struct PermSymbol {
  int u = 0;
  int v = 0;
  std::uint64_t terms = 0;
  CMatrix value;
};

inline constexpr int kMaxPermWordLength = 20;

/// Enumerates the binom(u+v, u) words in lexicographic order (L0 < L1) and
/// multiplies each left to right. The empty word (u = v = 0) is E.
/// Throws kSizeGuard when u + v > kMaxPermWordLength.
PermSymbol perm_sum(const QmeProblem& problem, int u, int v);

/// Linear-cost recursion from alpha_0 = E, alpha_1 = 0, beta_0 = 0, beta_1 = E.
AlphaBeta alpha_beta(const QmeProblem& problem, int p);

/// alpha_0 .. alpha_{p_max} (and beta) in one sweep.
std::vector<AlphaBeta> alpha_beta_sequence(const QmeProblem& problem,
                                           int p_max);

/// The explicit permutation-sum forms
///   alpha_p = sum_t {L0^(t) L1^(p-2-2t)} L0,  beta_p = sum_t {L0^(t) L1^(p-1-2t)},
/// evaluated through perm_sum. Exponential cost; kept as an independent
/// check on alpha_beta.
AlphaBeta alpha_beta_oracle(const QmeProblem& problem, int p);

/// S^p = beta_p S + alpha_p. Throws kNotASolvent if `s` fails is_solvent.
CMatrix power_linearized(const QmeProblem& problem, const CMatrix& s, int p);

/// S_{p,r} = beta_p (sum S_i) + r alpha_p, r = solvents.size() >= 1.
CMatrix power_sum(const QmeProblem& problem, std::span<const CMatrix> solvents,
                  int p);

/// Pi_{p,r} = beta_p Pi_{1,r} + (r-1) alpha_p S_{1,r} with
/// Pi_{1,r} = sum_{i<j} (S_i S_j + S_j S_i); equals
/// sum_{i<j} (S_i^p S_j + S_j^p S_i). Requires r >= 2.
CMatrix mixed_sum(const QmeProblem& problem, std::span<const CMatrix> solvents,
                  int p);

// Symmetric functions of a complete pair. All throw kNotComplete otherwise.
CMatrix elementary_sigma2(const CMatrix& s1, const CMatrix& s2,
                          const TolerancePolicy& tol = {});
CMatrix elementary_pi2(const CMatrix& s1, const CMatrix& s2,
                       const TolerancePolicy& tol = {});
/// (S1^p - S2^p)(S1 - S2)^{-1}
CMatrix sigma_p(const CMatrix& s1, const CMatrix& s2, int p,
                const TolerancePolicy& tol = {});
/// S1^p (S1 - S2)^{-1} S2 - S2^p (S1 - S2)^{-1} S1
CMatrix pi_p(const CMatrix& s1, const CMatrix& s2, int p,
             const TolerancePolicy& tol = {});

struct IdentityCheck {
  double residual = 0.0;
  /// Magnitude of the terms entering the identity; residual / scale is the
  /// relative defect.
  double scale = 1.0;

  double relative() const { return residual / scale; }
};

/// ||S1^2 + S2^2 - (Sigma2 (S1 + S2) - 2 Pi2)||_F
IdentityCheck check_girard_newton(const CMatrix& s1, const CMatrix& s2,
                                  const TolerancePolicy& tol = {});

/// ||S1^p + S2^p - beta_p (S1 + S2) - 2 alpha_p||_F, alpha/beta taken from
/// the QME reconstructed from the pair.
IdentityCheck check_waring(const CMatrix& s1, const CMatrix& s2, int p,
                           const TolerancePolicy& tol = {});

struct IdentityRow {
  std::string identity;
  int p = 0;
  IdentityCheck check;
};

/// Every identity for a pair of solvents of `problem`, p = 0..p_max:
/// girard_newton, waring, mixed_power (Pi_{p,2} = alpha_p S_{1,2} + beta_p Pi_{1,2}),
/// sigma_beta (Sigma_p = beta_p) and pi_alpha (Pi_p = -alpha_p). The last two
/// need a complete pair and are skipped otherwise.
/// Throws kNotASolvent if either matrix fails is_solvent.
std::vector<IdentityRow> verify_identities(const QmeProblem& problem,
                                           const CMatrix& s1,
                                           const CMatrix& s2, int p_max);

}  // namespace qme
