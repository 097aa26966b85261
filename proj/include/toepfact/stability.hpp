#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toepfact/core.hpp"
#include "toepfact/genmat.hpp"
#include "toepfact/solvers.hpp"

namespace toepfact {

// ||M - F'F||_2 / (eps ||M||_2) for an upper factor (F F' for a lower one).
double decomposition_error(const DenseMatrix& M, const TriangularFactor& F);
double decomposition_error(const ToeplitzSpd& T, const TriangularFactor& F);

// ||Tx - b||_2 / (eps ||x||_2 ||T||_2). Throws DomainError when x is zero.
double scaled_residual(const ToeplitzSpd& T, const Vector& x, const Vector& b);

// ||x_computed - x_true||_2 / ||x_true||_2. Throws DomainError when x_true
// is zero.
double solution_error(const Vector& x_computed, const Vector& x_true);

struct CybenkoBounds {
  double lower = 1.0;
  double upper = 1.0;
};

// Bounds on t0 * ||T^{-1}||_1 in terms of the reflection coefficients:
// lower = max{prod 1/(1 - rho^2), prod 1/(1 - rho)},
// upper = prod (1 + |rho|)/(1 - |rho|).
// Throws DomainError when any |rho| >= 1.
CybenkoBounds cybenko_bounds(const Vector& rhos);

// ||T^{-1}||_1 by dense inversion through the Cholesky factor. Intended for
// moderate n; cost is one factorization plus n triangular solve pairs.
double inverse_one_norm(const ToeplitzSpd& T);

// How the right-hand side of an experiment is built:
//   unit_solution  b = T x_true, x_true alternating +-1 normalized to 1;
//   scaled         same x_true scaled by 1/eps;
//   random         b uniform in [-1, 1) from rhs_seed; no x_true recorded.
enum class RhsMode { unit_solution, scaled, random };

struct StabilityReport {
  std::string algorithm;
  std::size_t n = 0;
  std::string instance_descriptor;
  double cond_estimate = 0.0;  // 0 when estimation failed (see warnings)
  std::optional<double> decomp_error;
  std::optional<double> soln_error;
  std::optional<double> scaled_residual;
  std::vector<std::string> warnings;
  std::string error;  // nonempty when the algorithm failed on this instance
};

struct ExperimentInstance {
  ToeplitzSpd matrix;
  std::string descriptor;
};

struct ExperimentConfig {
  std::vector<std::string> algorithms;
  RhsMode rhs_mode = RhsMode::unit_solution;
  std::uint64_t rhs_seed = 0;
};

// Registry of algorithm names accepted by run_experiment: cholesky,
// levinson, the five downdating variants (bareiss_hyp, bareiss_mixed,
// bareiss_mixed_alt, bareiss_scaled_hyp, bareiss_scaled_mixed) and the
// full-matrix bareiss_full.
const std::vector<std::string>& algorithm_names();

// Runs every requested algorithm on one instance with a shared right-hand
// side. Per-algorithm breakdowns are recorded in the report's error field;
// the batch always completes. Reports come back sorted by algorithm name.
std::vector<StabilityReport> run_experiment(const ExperimentInstance& inst,
                                            const ExperimentConfig& cfg);

// Deterministic instance battery used by the test suite: dimensions cycle
// through n_values, coefficients are drawn with pivot decay bounded below by
// 1e-3 so every instance is factorable at working precision.
std::vector<ReflectionSpec> standard_ensemble(
    const std::vector<std::size_t>& n_values, std::size_t per_n,
    std::uint64_t seed);

}  // namespace toepfact
