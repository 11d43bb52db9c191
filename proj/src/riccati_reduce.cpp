#include "qme/riccati_reduce.hpp"

#include <sstream>

#include "qme/linalg.hpp"

namespace qme {
namespace {

void require_same_square(std::initializer_list<std::pair<const CMatrix*, const char*>> ms) {
  Eigen::Index n = -1;
  for (const auto& [m, name] : ms) {
    require_square(*m, name);
    require_finite(*m, name);
    if (n < 0) n = m->rows();
    if (m->rows() != n) {
      fail(ErrorCode::kDimensionMismatch,
           std::string(name) + " is " + std::to_string(m->rows()) +
               "x" + std::to_string(m->rows()) + ", expected " +
               std::to_string(n) + "x" + std::to_string(n));
    }
  }
}

SolventCheck gate(const CMatrix& r, double scale, double rel_residual) {
  SolventCheck out;
  out.residual_norm = r.norm();
  out.bound = rel_residual * scale;
  out.is_solvent = out.residual_norm <= out.bound;
  return out;
}

}  // namespace

CMatrix riccati_residual(const RiccatiProblem& r, const CMatrix& z) {
  if (z.rows() != r.a.rows() || z.cols() != r.a.rows()) {
    fail(ErrorCode::kDimensionMismatch, "Z must match the Riccati dimension");
  }
  return z * r.a * z + r.b * z + z * r.c + r.d;
}

SolventCheck check_riccati_solution(const RiccatiProblem& r, const CMatrix& z,
                                    double rel_residual) {
  const double zn = z.norm();
  return gate(riccati_residual(r, z),
              1.0 + zn * zn * r.a.norm() + (r.b.norm() + r.c.norm()) * zn +
                  r.d.norm(),
              rel_residual);
}

CMatrix bilateral_residual(const BilateralProblem& q, const CMatrix& y) {
  if (y.rows() != q.l0.rows() || y.cols() != q.l0.rows()) {
    fail(ErrorCode::kDimensionMismatch, "Y must match the equation dimension");
  }
  return y * y + q.l1 * y + y * q.l1_prime + q.l0;
}

SolventCheck check_bilateral_solution(const BilateralProblem& q,
                                      const CMatrix& y, double rel_residual) {
  const double yn = y.norm();
  return gate(bilateral_residual(q, y),
              1.0 + yn * yn + (q.l1.norm() + q.l1_prime.norm()) * yn +
                  q.l0.norm(),
              rel_residual);
}

CMatrix ReductionTrace::to_original(const CMatrix& x) const {
  CMatrix y = -back_map_.shift - x;
  if (back_map_.right) return y * (*back_map_.right);
  return y;
}

CMatrix ReductionTrace::to_canonical(const CMatrix& z) const {
  const CMatrix y = back_map_.right_inverse ? CMatrix(z * (*back_map_.right_inverse))
                                            : z;
  return -back_map_.shift - y;
}

std::string ReductionTrace::describe() const {
  std::ostringstream out;
  out << "Y = -shift - X";
  if (back_map_.right) out << ", Z = Y A^{-1}";
  return out.str();
}

ReductionTrace reduce_bqme(const CMatrix& l1t, const CMatrix& l1pt,
                           const CMatrix& l0t, const TolerancePolicy& tol) {
  require_same_square({{&l1t, "L1~"}, {&l1pt, "L1'~"}, {&l0t, "L0~"}});
  QmeProblem canonical(l1t * l1pt - l0t, l1t - l1pt, tol);
  return ReductionTrace(std::move(canonical), BackMap{l1pt, {}, {}});
}

ReductionTrace reduce_lqme(const CMatrix& l1pt, const CMatrix& l0t,
                           const TolerancePolicy& tol) {
  require_same_square({{&l1pt, "L1'~"}, {&l0t, "L0~"}});
  return reduce_bqme(CMatrix::Zero(l1pt.rows(), l1pt.cols()), l1pt, l0t, tol);
}

ReductionTrace reduce_riccati(const RiccatiProblem& r,
                              const TolerancePolicy& tol) {
  require_same_square({{&r.a, "A"}, {&r.b, "B"}, {&r.c, "C"}, {&r.d, "D"}});
  tol.validate();
  if (!linalg::is_invertible(r.a, tol.rank_rel)) {
    fail(ErrorCode::kSingularA, "A fails the invertibility gate");
  }
  const auto lu = r.a.partialPivLu();
  const CMatrix a_inv = lu.solve(identity(r.a.rows()));
  const CMatrix l1pt = lu.solve(r.c) * r.a;
  const ReductionTrace bqme = reduce_bqme(r.b, l1pt, r.d * r.a, tol);
  return ReductionTrace(bqme.canonical(), BackMap{l1pt, a_inv, r.a});
}

SolventSet solve_sbqme(const CMatrix& l1t, const CMatrix& l0t,
                       const TolerancePolicy& tol,
                       const SolveOptions& options) {
  const ReductionTrace trace = reduce_bqme(l1t, l1t, l0t, tol);
  SolventSet out = enumerate_solvents(trace.canonical(), options);
  for (CMatrix& x : out.solvents) x = trace.to_original(x);
  return out;
}

}  // namespace qme
