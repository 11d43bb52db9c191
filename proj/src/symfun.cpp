#include "qme/symfun.hpp"

#include <algorithm>
#include <string>

#include "qme/linalg.hpp"
#include "qme/reconstruct.hpp"

namespace qme {
namespace {

void require_solvent(const QmeProblem& problem, const CMatrix& s,
                     const char* what) {
  const SolventCheck c = is_solvent(problem, s);
  if (!c.is_solvent) {
    fail(ErrorCode::kNotASolvent,
         std::string(what) + " residual " + std::to_string(c.residual_norm) +
             " exceeds " + std::to_string(c.bound));
  }
}

void require_complete(const CMatrix& s1, const CMatrix& s2,
                      const TolerancePolicy& tol) {
  if (!is_complete_pair(s1, s2, tol)) {
    fail(ErrorCode::kNotComplete, "S1 - S2 is singular");
  }
}

void require_power(int p) {
  if (p < 0) fail(ErrorCode::kInvalidArgument, "p must be non-negative");
}

}  // namespace

PermSymbol perm_sum(const QmeProblem& problem, int u, int v) {
  if (u < 0 || v < 0) {
    fail(ErrorCode::kInvalidArgument, "u and v must be non-negative");
  }
  if (u + v > kMaxPermWordLength) {
    fail(ErrorCode::kSizeGuard, "word length " + std::to_string(u + v) +
                                    " exceeds " +
                                    std::to_string(kMaxPermWordLength));
  }
  const Eigen::Index n = problem.n();
  PermSymbol out{u, v, 0, CMatrix::Zero(n, n)};
  std::vector<int> word(static_cast<std::size_t>(u), 0);
  word.insert(word.end(), static_cast<std::size_t>(v), 1);
  do {
    CMatrix prod = identity(n);
    for (int letter : word) {
      prod = prod * (letter == 0 ? problem.l0() : problem.l1());
    }
    out.value += prod;
    ++out.terms;
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

std::vector<AlphaBeta> alpha_beta_sequence(const QmeProblem& problem,
                                           int p_max) {
  require_power(p_max);
  const Eigen::Index n = problem.n();
  std::vector<AlphaBeta> out;
  out.reserve(static_cast<std::size_t>(p_max) + 1);
  out.push_back({0, identity(n), CMatrix::Zero(n, n)});
  if (p_max >= 1) out.push_back({1, CMatrix::Zero(n, n), identity(n)});
  for (int p = 2; p <= p_max; ++p) {
    const AlphaBeta& a = out[static_cast<std::size_t>(p - 2)];
    const AlphaBeta& b = out[static_cast<std::size_t>(p - 1)];
    out.push_back({p, problem.l0() * a.alpha + problem.l1() * b.alpha,
                   problem.l0() * a.beta + problem.l1() * b.beta});
  }
  return out;
}

AlphaBeta alpha_beta(const QmeProblem& problem, int p) {
  return alpha_beta_sequence(problem, p).back();
}

AlphaBeta alpha_beta_oracle(const QmeProblem& problem, int p) {
  require_power(p);
  if (p > kMaxPermWordLength) {
    fail(ErrorCode::kSizeGuard, "oracle limited to p <= " +
                                    std::to_string(kMaxPermWordLength));
  }
  const Eigen::Index n = problem.n();
  AlphaBeta out{p, CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
  if (p == 0) {
    out.alpha = identity(n);
    return out;
  }
  for (int t = 0; 2 * t <= p - 1; ++t) {
    out.beta += perm_sum(problem, t, p - 1 - 2 * t).value;
  }
  for (int t = 0; p >= 2 && 2 * t <= p - 2; ++t) {
    out.alpha += perm_sum(problem, t, p - 2 - 2 * t).value * problem.l0();
  }
  return out;
}

CMatrix power_linearized(const QmeProblem& problem, const CMatrix& s, int p) {
  require_solvent(problem, s, "S");
  const AlphaBeta ab = alpha_beta(problem, p);
  return ab.beta * s + ab.alpha;
}

CMatrix power_sum(const QmeProblem& problem, std::span<const CMatrix> solvents,
                  int p) {
  if (solvents.empty()) {
    fail(ErrorCode::kInvalidArgument, "power_sum needs at least one solvent");
  }
  const Eigen::Index n = problem.n();
  CMatrix sum = CMatrix::Zero(n, n);
  for (const CMatrix& s : solvents) {
    require_solvent(problem, s, "solvent");
    sum += s;
  }
  const AlphaBeta ab = alpha_beta(problem, p);
  return ab.beta * sum + static_cast<double>(solvents.size()) * ab.alpha;
}

CMatrix mixed_sum(const QmeProblem& problem, std::span<const CMatrix> solvents,
                  int p) {
  if (solvents.size() < 2) {
    fail(ErrorCode::kInvalidArgument, "mixed_sum needs at least two solvents");
  }
  const Eigen::Index n = problem.n();
  CMatrix sum = CMatrix::Zero(n, n);
  CMatrix pairs = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < solvents.size(); ++i) {
    require_solvent(problem, solvents[i], "solvent");
    sum += solvents[i];
    for (std::size_t j = i + 1; j < solvents.size(); ++j) {
      pairs += solvents[i] * solvents[j] + solvents[j] * solvents[i];
    }
  }
  const AlphaBeta ab = alpha_beta(problem, p);
  return ab.beta * pairs +
         static_cast<double>(solvents.size() - 1) * ab.alpha * sum;
}

CMatrix sigma_p(const CMatrix& s1, const CMatrix& s2, int p,
                const TolerancePolicy& tol) {
  require_power(p);
  require_complete(s1, s2, tol);
  return linalg::solve_right(linalg::power(s1, p) - linalg::power(s2, p),
                             s1 - s2);
}

CMatrix pi_p(const CMatrix& s1, const CMatrix& s2, int p,
             const TolerancePolicy& tol) {
  require_power(p);
  require_complete(s1, s2, tol);
  const auto lu = (s1 - s2).partialPivLu();
  return linalg::power(s1, p) * lu.solve(s2) -
         linalg::power(s2, p) * lu.solve(s1);
}

CMatrix elementary_sigma2(const CMatrix& s1, const CMatrix& s2,
                          const TolerancePolicy& tol) {
  return sigma_p(s1, s2, 2, tol);
}

CMatrix elementary_pi2(const CMatrix& s1, const CMatrix& s2,
                       const TolerancePolicy& tol) {
  return pi_p(s1, s2, 2, tol);
}

IdentityCheck check_girard_newton(const CMatrix& s1, const CMatrix& s2,
                                  const TolerancePolicy& tol) {
  const CMatrix sigma2 = elementary_sigma2(s1, s2, tol);
  const CMatrix pi2 = elementary_pi2(s1, s2, tol);
  const CMatrix lhs = s1 * s1 + s2 * s2;
  const CMatrix sum = s1 + s2;
  IdentityCheck out;
  out.residual = (lhs - (sigma2 * sum - 2.0 * pi2)).norm();
  out.scale = 1.0 + lhs.norm() + sigma2.norm() * sum.norm() + 2.0 * pi2.norm();
  return out;
}

IdentityCheck check_waring(const CMatrix& s1, const CMatrix& s2, int p,
                           const TolerancePolicy& tol) {
  require_power(p);
  const QmeCoefficients c = coefficients_from_pair(s1, s2, tol);
  const QmeProblem problem(c.l0, c.l1, tol);
  const AlphaBeta ab = alpha_beta(problem, p);
  const CMatrix p1 = linalg::power(s1, p);
  const CMatrix p2 = linalg::power(s2, p);
  const CMatrix sum = s1 + s2;
  IdentityCheck out;
  out.residual = (p1 + p2 - ab.beta * sum - 2.0 * ab.alpha).norm();
  out.scale = 1.0 + p1.norm() + p2.norm() + ab.beta.norm() * sum.norm() +
              2.0 * ab.alpha.norm();
  return out;
}

std::vector<IdentityRow> verify_identities(const QmeProblem& problem,
                                           const CMatrix& s1,
                                           const CMatrix& s2, int p_max) {
  require_power(p_max);
  require_solvent(problem, s1, "S1");
  require_solvent(problem, s2, "S2");
  const TolerancePolicy& tol = problem.tol();
  const bool complete = is_complete_pair(s1, s2, tol);
  const std::vector<AlphaBeta> ab = alpha_beta_sequence(problem, p_max);
  const CMatrix sum = s1 + s2;
  const CMatrix pair_products = s1 * s2 + s2 * s1;

  std::vector<IdentityRow> out;
  if (complete) {
    out.push_back({"girard_newton", 2, check_girard_newton(s1, s2, tol)});
  }
  const auto lu = (s1 - s2).partialPivLu();
  for (int p = 0; p <= p_max; ++p) {
    const AlphaBeta& c = ab[static_cast<std::size_t>(p)];
    const CMatrix p1 = linalg::power(s1, p);
    const CMatrix p2 = linalg::power(s2, p);

    IdentityCheck waring;
    waring.residual = (p1 + p2 - c.beta * sum - 2.0 * c.alpha).norm();
    waring.scale = 1.0 + p1.norm() + p2.norm() + c.beta.norm() * sum.norm() +
                   2.0 * c.alpha.norm();
    out.push_back({"waring", p, waring});

    const CMatrix mixed = p1 * s2 + p2 * s1;
    IdentityCheck mixed_check;
    mixed_check.residual =
        (mixed - c.alpha * sum - c.beta * pair_products).norm();
    mixed_check.scale = 1.0 + mixed.norm() + c.alpha.norm() * sum.norm() +
                        c.beta.norm() * pair_products.norm();
    out.push_back({"mixed_power", p, mixed_check});

    if (!complete) continue;
    const CMatrix sig = linalg::solve_right(p1 - p2, s1 - s2);
    const CMatrix pi = p1 * lu.solve(s2) - p2 * lu.solve(s1);
    out.push_back({"sigma_beta", p,
                   {(sig - c.beta).norm(), 1.0 + sig.norm() + c.beta.norm()}});
    out.push_back({"pi_alpha", p,
                   {(pi + c.alpha).norm(), 1.0 + pi.norm() + c.alpha.norm()}});
  }
  return out;
}

}  // namespace qme
