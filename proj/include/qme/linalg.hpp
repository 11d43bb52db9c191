#pragma once

#include <cstdint>

#include "qme/core.hpp"

// Small dense helpers shared across modules.
namespace qme::linalg {

double frobenius(const CMatrix& m);

Eigen::VectorXd singular_values(const CMatrix& m);

double spectral_norm(const CMatrix& m);

/// sigma_max / sigma_min; +inf when sigma_min is zero.
double condition_number(const CMatrix& m);

/// True iff sigma_min > rank_rel * sigma_max (and the matrix is nonzero).
bool is_invertible(const CMatrix& m, double rank_rel);

/// Moore-Penrose pseudoinverse; singular values below rank_rel * sigma_max
/// are treated as zero.
CMatrix pseudo_inverse(const CMatrix& m, double rank_rel);

/// Orthonormal basis (columns) of the numerical null space of a square
/// matrix; `scale` sets the absolute magnitude against which singular values
/// are compared (threshold rank_rel * scale).
CMatrix null_space(const CMatrix& m, double rank_rel, double scale);

/// lhs * rhs^{-1} through an LU solve of rhs^T.
CMatrix solve_right(const CMatrix& lhs, const CMatrix& rhs);

/// lhs^{-1} * rhs through an LU solve.
CMatrix solve_left(const CMatrix& lhs, const CMatrix& rhs);

/// m^p by repeated multiplication (p >= 0).
CMatrix power(const CMatrix& m, int p);

std::uint64_t binomial(int n, int k);

}  // namespace qme::linalg
