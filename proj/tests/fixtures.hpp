#pragma once

// Worked examples with known solvent structure.

#include "test_util.hpp"

namespace qme::testing {

// X^2 + 2 diag(1,-1) X - [[-1,1],[0,-1]] = 0, i.e. L1 = diag(-2, 2).
struct SmallFixture {
  Mat l0, l1, solvent;
};

inline SmallFixture triangular_2x2() {
  SmallFixture f;
  f.l1 = diag({-2.0, 2.0});
  f.l0 = Mat(2, 2);
  f.l0 << -1.0, 1.0, 0.0, -1.0;
  f.solvent = Mat(2, 2);
  f.solvent << -1.0, 0.5, 0.0, 1.0;
  return f;
}

// X^2 - L1 X = 0 whose solvent is not captured by (L1 + sqrt(L1^2)) / 2.
inline SmallFixture permutation_3x3() {
  SmallFixture f;
  f.l0 = Mat::Zero(3, 3);
  f.l1 = Mat::Zero(3, 3);
  f.l1(1, 2) = 1.0;
  f.l1(2, 0) = 0.5;
  f.solvent = Mat::Zero(3, 3);
  f.solvent(1, 2) = 1.0;
  f.solvent(2, 0) = 1.0;
  return f;
}

// (X - E)^2 = H with H a nilpotent Jordan block: L1 = 2E, L0 = -E + superdiag.
inline std::pair<Mat, Mat> no_solvent_problem(int n) {
  Mat l0 = -eye(n);
  for (int i = 0; i + 1 < n; ++i) l0(i, i + 1) = 1.0;
  return {l0, 2.0 * eye(n)};
}

// X^2 + X = diag(2, 0, ..., 0).
inline std::pair<Mat, Mat> diagonal_family_problem(int n) {
  Mat l0 = Mat::Zero(n, n);
  l0(0, 0) = 2.0;
  return {l0, -eye(n)};
}

// X^2 - X - 2E = 0.
inline std::pair<Mat, Mat> continuum_problem(int n) {
  return {2.0 * eye(n), eye(n)};
}

// Lower-triangular member of the continuum: blocks [[-1, 0], [c_k, 2]] down
// the diagonal, with a trailing -1 when n is odd.
inline Mat continuum_member(int n, const std::vector<Complex>& c) {
  Mat x = Mat::Zero(n, n);
  for (int k = 0; 2 * k + 1 < n; ++k) {
    x(2 * k, 2 * k) = -1.0;
    x(2 * k + 1, 2 * k + 1) = 2.0;
    x(2 * k + 1, 2 * k) = c.at(std::size_t(k));
  }
  if (n % 2) x(n - 1, n - 1) = -1.0;
  return x;
}

// S1 upper triangular (1 on the diagonal, 2 above), S2 = -S1^T. No QME has
// both as solvents.
inline std::pair<Mat, Mat> incompatible_pair(int n) {
  Mat s1 = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    s1(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) s1(i, j) = 2.0;
  }
  return {s1, -s1.transpose()};
}

// diag(1, ..., 1, 3) and diag(1, ..., 1, 2): a whole family of QMEs.
inline std::pair<Mat, Mat> underdetermined_pair(int n) {
  Mat s1 = eye(n), s2 = eye(n);
  s1(n - 1, n - 1) = 3.0;
  s2(n - 1, n - 1) = 2.0;
  return {s1, s2};
}

}  // namespace qme::testing
