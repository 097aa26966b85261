#pragma once

#include <cstddef>
#include <vector>

#include "toepfact/core.hpp"
#include "toepfact/downdate.hpp"

namespace toepfact {

enum class Variant { hyperbolic, mixed, mixed_alt };
enum class ScaledVariant { hyperbolic, mixed };

// Cholesky factor assembled from the downdating sweep. Row k of U is the
// generator u at step k, so U is upper triangular with positive diagonal and
// T = U^T U. sines holds the n - 1 rotation sines in step order; warnings
// holds the 1-based indices of near-breakdown steps.
struct FactorResult {
  DenseMatrix U;
  Vector sines;
  std::vector<std::size_t> warnings;
};

// Scaled form T = W^T D^2 W: row k of W is the scaled generator w at step k
// and D[k] its scale, so diag(D) * W equals the U produced by factor().
struct ScaledFactorResult {
  DenseMatrix W;
  Vector D;
  Vector sines;
  std::vector<std::size_t> warnings;

  // Folds the scales into the rows, giving the plain triangular factor.
  DenseMatrix unscaled() const;
};

// Runs n - 1 elimination steps from the initial generator pair. Throws
// BreakdownError (carrying the 1-based step) when the represented matrix is
// not positive definite at working precision.
FactorResult factor(const GeneratorPair& g0, Variant variant);

ScaledFactorResult factor_scaled(const ScaledGeneratorPair& g0,
                                 ScaledVariant variant);

// Reflection coefficients of an SPD Toeplitz matrix: the negated rotation
// sines of the mixed-variant factorization, length n - 1.
Vector reflection_coefficients(const ToeplitzSpd& T);

}  // namespace toepfact
