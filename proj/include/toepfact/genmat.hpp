#pragma once

#include <cstddef>
#include <cstdint>

#include "toepfact/core.hpp"
#include "toepfact/downdate.hpp"

namespace toepfact {

// splitmix64. The algorithm name is recorded in experiment output because
// the ensembles are defined by this exact stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 significant bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// A Toeplitz matrix described by its diagonal value and reflection
// coefficients; t0 > 0 and every |rhos[i]| < 1, which makes the matrix SPD
// by construction. Dimension is rhos.size() + 1.
struct ReflectionSpec {
  double t0 = 1.0;
  Vector rhos;
};

// Generator pair of an SPD Toeplitz matrix: u = t/sqrt(t0) and
// v = (0, t1, ..., t_{n-1})/sqrt(t0), so that T - ZTZ^T = uu^T - vv^T.
GeneratorPair toeplitz_generators(const ToeplitzSpd& T);

// Prolate matrix: t0 = 2*omega, t_k = sin(2*pi*omega*k)/(pi*k). Arguments of
// the sine are reduced to [-1/2, 1/2] periods first so that integer
// multiples give exact zeros (omega = 1/2 yields the identity exactly).
// Requires 0 < omega <= 1/2.
ToeplitzSpd prolate(std::size_t n, double omega);

// Reconstructs the unique SPD Toeplitz matrix whose factorization produces
// the prescribed reflection coefficients, by running the elimination
// recurrences backwards one column at a time. Round trip with
// reflection_coefficients is the defining property.
ToeplitzSpd from_reflection_coeffs(const ReflectionSpec& spec);

// Alternating-sign coefficient vector +m, -m, +m, ... of the given length.
Vector alternating_rhos(std::size_t count, double magnitude);

// Draws count coefficients uniform in [-rho_max, rho_max]. Each draw is
// additionally capped so the running product of (1 - rho^2), the pivot decay
// of the implied matrix, never falls below min_pivot_product; with
// min_pivot_product = 0 the draws are unconstrained.
Vector random_rhos(std::size_t count, double rho_max, double min_pivot_product,
                   SplitMix64& rng);

// Deterministic random SPD Toeplitz instance: t0 = 1 and unconstrained
// uniform coefficients in [-rho_max, rho_max] from the given seed.
ToeplitzSpd random_spd_toeplitz(std::size_t n, double rho_max,
                                std::uint64_t seed);

}  // namespace toepfact
