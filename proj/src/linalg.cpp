#include "qme/linalg.hpp"

#include <limits>

namespace qme::linalg {

double frobenius(const CMatrix& m) { return m.norm(); }

Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const CMatrix& m) {
  const Eigen::VectorXd s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

double condition_number(const CMatrix& m) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

bool is_invertible(const CMatrix& m, double rank_rel) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  const Eigen::VectorXd s = singular_values(m);
  return s(0) > 0.0 && s(s.size() - 1) > rank_rel * s(0);
}

CMatrix pseudo_inverse(const CMatrix& m, double rank_rel) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  CMatrix out = CMatrix::Zero(m.cols(), m.rows());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cutoff = rank_rel * s(0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cutoff) break;
    out += svd.matrixV().col(k) * (1.0 / s(k)) * svd.matrixU().col(k).adjoint();
  }
  return out;
}

CMatrix null_space(const CMatrix& m, double rank_rel, double scale) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = rank_rel * scale;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

CMatrix solve_right(const CMatrix& lhs, const CMatrix& rhs) {
  return rhs.transpose().partialPivLu().solve(lhs.transpose()).transpose();
}

CMatrix solve_left(const CMatrix& lhs, const CMatrix& rhs) {
  return lhs.partialPivLu().solve(rhs);
}

CMatrix power(const CMatrix& m, int p) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int k = 0; k < p; ++k) out = out * m;
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * static_cast<std::uint64_t>(n - k + i) /
          static_cast<std::uint64_t>(i);
  }
  return out;
}

}  // namespace qme::linalg
