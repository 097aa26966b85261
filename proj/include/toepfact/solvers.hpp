#pragma once

#include <cstddef>

#include "toepfact/core.hpp"

namespace toepfact {

enum class Orientation { upper, lower };

// Triangular matrix wrapper. Construction verifies the entries outside the
// triangle are exactly zero and the diagonal is strictly positive.
struct TriangularFactor {
  DenseMatrix U;
  Orientation orientation;

  TriangularFactor(DenseMatrix m, Orientation o);

  std::size_t n() const { return U.rows(); }
};

// Textbook dense Cholesky, M = U^T U with U upper triangular. Requires M
// exactly symmetric. Throws NotPositiveDefiniteError carrying the 0-based
// pivot index that failed.
TriangularFactor cholesky_dense(const DenseMatrix& M);

// Forward or back substitution depending on orientation. Throws
// ZeroPivotError on a zero diagonal entry.
Vector solve_triangular(const TriangularFactor& F, const Vector& b);

struct LevinsonResult {
  Vector x;
  Vector sines;  // rotation sines; negate for reflection coefficients
};

// Levinson-Durbin recursion with a general right-hand side, O(n^2). Throws
// BreakdownError when a prediction-error energy becomes <= 0.
LevinsonResult levinson_solve(const ToeplitzSpd& T, const Vector& b);

// 2-norm condition number via the symmetric eigenvalues of the materialized
// matrix; an estimate whose accuracy degrades with the conditioning itself.
// Throws IllConditionedError when the eigensolve stalls or the smallest
// magnitude eigenvalue vanishes.
double cond_2(const ToeplitzSpd& T);

}  // namespace toepfact
