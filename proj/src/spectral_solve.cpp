#include "qme/spectral_solve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "qme/linalg.hpp"

namespace qme {
namespace {

using Cluster = std::vector<int>;

Complex cluster_mean(const std::vector<Complex>& lambdas, const Cluster& c) {
  Complex sum = 0.0;
  for (int i : c) sum += lambdas[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(c.size());
}

// Radius within which k computed eigenvalues are accepted as one multiple
// eigenvalue. A defective eigenvalue of multiplicity k splits under rounding
// by roughly eps^{1/k}, so the admissible radius grows with k.
double cluster_radius(double base, std::size_t k, Complex center) {
  return std::pow(base, 1.0 / static_cast<double>(k)) *
         std::max(1.0, std::abs(center));
}

// Connected components of `members` under single linkage with radius
// cluster_radius(base, m, .) per link.
std::vector<Cluster> link_components(const std::vector<Complex>& lambdas,
                                     const Cluster& members, double base,
                                     std::size_t m) {
  const std::size_t k = members.size();
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const Complex la = lambdas[static_cast<std::size_t>(members[a])];
      const Complex lb = lambdas[static_cast<std::size_t>(members[b])];
      const Complex center =
          std::abs(la) > std::abs(lb) ? la : lb;
      if (std::abs(la - lb) <= 2.0 * cluster_radius(base, m, center)) {
        parent[static_cast<std::size_t>(find(static_cast<int>(a)))] =
            find(static_cast<int>(b));
      }
    }
  }
  std::vector<Cluster> out;
  std::vector<int> slot(k, -1);
  for (std::size_t a = 0; a < k; ++a) {
    const int root = find(static_cast<int>(a));
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])]
        .push_back(members[a]);
  }
  return out;
}

void split_clusters(const std::vector<Complex>& lambdas, const Cluster& members,
                    double base, std::vector<Cluster>& out) {
  if (members.size() == 1) {
    out.push_back(members);
    return;
  }
  const Complex mean = cluster_mean(lambdas, members);
  double spread = 0.0;
  for (int i : members) {
    spread = std::max(spread,
                      std::abs(lambdas[static_cast<std::size_t>(i)] - mean));
  }
  if (spread <= cluster_radius(base, members.size(), mean)) {
    out.push_back(members);
    return;
  }
  for (std::size_t m = members.size() - 1; m >= 1; --m) {
    auto parts = link_components(lambdas, members, base, m);
    if (parts.size() > 1) {
      for (const auto& part : parts) split_clusters(lambdas, part, base, out);
      return;
    }
  }
  for (int i : members) out.push_back({i});
}

CMatrix pencil_at(const QmeProblem& problem, Complex lambda) {
  return lambda * lambda * identity(problem.n()) - lambda * problem.l1() -
         problem.l0();
}

void unrank_combination(std::uint64_t rank, int total, int k,
                        std::vector<int>& comb) {
  comb.resize(static_cast<std::size_t>(k));
  int x = 0;
  for (int i = 0; i < k; ++i) {
    for (int c = x;; ++c) {
      const std::uint64_t count = linalg::binomial(total - c - 1, k - i - 1);
      if (rank < count) {
        comb[static_cast<std::size_t>(i)] = c;
        x = c + 1;
        break;
      }
      rank -= count;
    }
  }
}

bool next_combination(std::vector<int>& comb, int total) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == total - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

struct Accepted {
  std::uint64_t rank;
  CMatrix s;
};

struct WorkerResult {
  std::vector<Accepted> accepted;
  bool all_independent = true;
};

void sweep(const QmeProblem& problem, const PencilEigenpairs& pairs,
           std::uint64_t begin, std::uint64_t end,
           std::vector<CandidateDiagnostics>* diagnostics, WorkerResult& out) {
  const auto n = static_cast<int>(problem.n());
  const int total = 2 * n;
  const double max_cond = 1.0 / problem.tol().rank_rel;
  std::vector<int> comb;
  unrank_combination(begin, total, n, comb);
  CMatrix w(n, n);
  CVector mu(n);
  for (std::uint64_t rank = begin; rank < end; ++rank) {
    CandidateDiagnostics diag;
    for (int j = 0; j < n; ++j) {
      const auto idx = static_cast<std::size_t>(comb[static_cast<std::size_t>(j)]);
      w.col(j) = pairs.vectors[idx];
      mu(j) = pairs.lambdas[idx];
      diag.subset_mask |= (1u << idx);
    }
    diag.w_condition = linalg::condition_number(w);
    if (!(diag.w_condition < max_cond)) {
      diag.status = CandidateStatus::kSingularW;
      out.all_independent = false;
    } else {
      CMatrix s = linalg::solve_right(w * mu.asDiagonal(), w);
      const SolventCheck check = is_solvent(problem, s);
      diag.residual_norm = check.residual_norm;
      if (check.is_solvent) {
        diag.status = CandidateStatus::kAccepted;
        out.accepted.push_back({rank, std::move(s)});
      } else {
        diag.status = CandidateStatus::kResidualTooLarge;
      }
    }
    if (diagnostics != nullptr) (*diagnostics)[rank] = diag;
    if (rank + 1 < end) next_combination(comb, total);
  }
}

}  // namespace

std::vector<int> CandidateDiagnostics::indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (subset_mask & (1u << i)) out.push_back(i);
  }
  return out;
}

CMatrix companion(const QmeProblem& problem) {
  const Eigen::Index n = problem.n();
  CMatrix c = CMatrix::Zero(2 * n, 2 * n);
  c.topRightCorner(n, n) = identity(n);
  c.bottomLeftCorner(n, n) = problem.l0();
  c.bottomRightCorner(n, n) = problem.l1();
  return c;
}

PencilEigenpairs pencil_eigenpairs(const QmeProblem& problem) {
  const Eigen::Index n = problem.n();
  Eigen::ComplexEigenSolver<CMatrix> es(companion(problem), true);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::kEigFailure, "companion eigendecomposition did not converge");
  }
  const Eigen::Index m = 2 * n;
  std::vector<Complex> raw_lambda(static_cast<std::size_t>(m));
  std::vector<CVector> raw_vector(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    raw_lambda[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    CVector v = es.eigenvectors().col(i).head(n);
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      fail(ErrorCode::kEigFailure, "degenerate companion eigenvector");
    }
    raw_vector[static_cast<std::size_t>(i)] = v / norm;
  }

  Cluster all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Cluster> clusters;
  split_clusters(raw_lambda, all, problem.tol().eig_cluster_rel, clusters);

  const double l0n = linalg::spectral_norm(problem.l0());
  const double l1n = linalg::spectral_norm(problem.l1());

  // Expand false clusters (no null vector at the mean) into singletons and
  // attach vectors to every member.
  struct Group {
    Complex key;
    std::vector<Complex> lambdas;
    std::vector<CVector> vectors;
    int geometric = 1;
  };
  std::vector<Group> groups;
  for (const auto& c : clusters) {
    if (c.size() == 1) {
      const auto i = static_cast<std::size_t>(c[0]);
      groups.push_back({raw_lambda[i], {raw_lambda[i]}, {raw_vector[i]}, 1});
      continue;
    }
    const Complex mean = cluster_mean(raw_lambda, c);
    const double am = std::abs(mean);
    const CMatrix basis = linalg::null_space(pencil_at(problem, mean),
                                             problem.tol().rank_rel,
                                             am * am + l1n * am + l0n);
    if (basis.cols() == 0) {
      for (int i : c) {
        const auto u = static_cast<std::size_t>(i);
        groups.push_back({raw_lambda[u], {raw_lambda[u]}, {raw_vector[u]}, 1});
      }
      continue;
    }
    const auto g = std::min<Eigen::Index>(basis.cols(),
                                          static_cast<Eigen::Index>(c.size()));
    Group group{mean, {}, {}, static_cast<int>(g)};
    for (std::size_t j = 0; j < c.size(); ++j) {
      group.lambdas.push_back(mean);
      group.vectors.push_back(basis.col(static_cast<Eigen::Index>(j) % g));
    }
    groups.push_back(std::move(group));
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) {
                     if (a.key.real() != b.key.real()) {
                       return a.key.real() < b.key.real();
                     }
                     return a.key.imag() < b.key.imag();
                   });

  PencilEigenpairs out;
  out.distinct_count = static_cast<int>(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    out.cluster_geometric_multiplicity.push_back(groups[gi].geometric);
    for (std::size_t j = 0; j < groups[gi].lambdas.size(); ++j) {
      out.lambdas.push_back(groups[gi].lambdas[j]);
      out.vectors.push_back(groups[gi].vectors[j]);
      out.cluster.push_back(static_cast<int>(gi));
    }
  }
  return out;
}

SolventSet enumerate_solvents(const QmeProblem& problem,
                              const SolveOptions& options) {
  const Eigen::Index n = problem.n();
  if (n > kMaxEnumerationDim) {
    fail(ErrorCode::kSizeGuard,
         "enumeration over binom(2n, n) subsets refused for n = " +
             std::to_string(n) + " > " + std::to_string(kMaxEnumerationDim));
  }
  const PencilEigenpairs pairs = pencil_eigenpairs(problem);
  const std::uint64_t total =
      linalg::binomial(static_cast<int>(2 * n), static_cast<int>(n));

  SolventSet out;
  out.candidates_tried = total;
  for (int g : pairs.cluster_geometric_multiplicity) {
    if (g >= 2) out.infinite_family_flag = true;
  }
  if (options.keep_diagnostics) out.diagnostics.resize(total);
  std::vector<CandidateDiagnostics>* diag =
      options.keep_diagnostics ? &out.diagnostics : nullptr;

  const std::uint64_t workers =
      std::clamp<std::uint64_t>(options.workers, 1, std::max<std::uint64_t>(1, total));
  std::vector<WorkerResult> results(workers);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  if (workers == 1) {
    sweep(problem, pairs, 0, total, diag, results[0]);
  } else {
    std::vector<std::thread> threads;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      if (begin >= end) continue;
      threads.emplace_back([&, w, begin, end] {
        sweep(problem, pairs, begin, end, diag, results[w]);
      });
    }
    for (auto& t : threads) t.join();
  }

  bool all_independent = true;
  for (auto& r : results) {
    all_independent = all_independent && r.all_independent;
    for (auto& a : r.accepted) {
      const double scale = 1e-7 * (1.0 + a.s.norm());
      const bool duplicate = std::any_of(
          out.solvents.begin(), out.solvents.end(),
          [&](const CMatrix& s) { return (s - a.s).norm() <= scale; });
      if (duplicate) {
        if (diag != nullptr) (*diag)[a.rank].status = CandidateStatus::kDuplicate;
      } else {
        out.solvents.push_back(std::move(a.s));
      }
    }
  }
  out.haar_satisfied =
      pairs.distinct_count == static_cast<int>(2 * n) && all_independent;
  return out;
}

EisenfeldResult eisenfeld_predicts_solvents(const QmeProblem& problem) {
  EisenfeldResult out;
  if (!linalg::is_invertible(problem.l1(), problem.tol().rank_rel)) return out;
  const auto lu = problem.l1().partialPivLu();
  const CMatrix inv = lu.solve(identity(problem.n()));
  const CMatrix inv_l0 = lu.solve(problem.l0());
  out.value = 4.0 * linalg::spectral_norm(inv) * linalg::spectral_norm(inv_l0);
  out.predicts_solvents = out.value < 1.0;
  return out;
}

}  // namespace qme
