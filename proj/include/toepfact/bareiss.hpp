#pragma once

#include <cstddef>
#include <utility>

#include "toepfact/core.hpp"

namespace toepfact {

// State of the full-matrix symmetric elimination. a_pos carries the forward
// sweep (an upper trapezoid grows from the top while the trailing block stays
// Toeplitz up to rounding), a_neg the reflected sweep (lower trapezoid grows
// from the bottom). i counts completed steps; alphas[i] is the multiplier of
// step i + 1. Entries annihilated by a step are stored as exact zeros.
struct BareissState {
  DenseMatrix a_pos;
  DenseMatrix a_neg;
  std::size_t i = 0;
  Vector alphas;
};

BareissState bareiss_init(const ToeplitzSpd& T);

// Advances the elimination by one step. Throws BreakdownError when the
// multiplier is undefined or |alpha| >= 1, which certifies the matrix is not
// positive definite.
void bareiss_step(BareissState& st);

// Runs the full elimination and returns the Cholesky factor (rows of the
// final a_pos scaled by the square roots of its diagonal) together with the
// multiplier sequence. The multipliers equal the rotation sines of the
// generator-form factorization.
std::pair<DenseMatrix, Vector> bareiss_factor(const ToeplitzSpd& T);

// Solves T x = b through bareiss_factor and two triangular solves.
Vector bareiss_solve(const ToeplitzSpd& T, const Vector& b);

}  // namespace toepfact
