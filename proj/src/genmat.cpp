#include "toepfact/genmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toepfact/errors.hpp"

namespace toepfact {

GeneratorPair toeplitz_generators(const ToeplitzSpd& T) {
  std::size_t n = T.n();
  double s = std::sqrt(T.t(0));
  Vector u(n), v(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) u[j] = T.t(j) / s;
  for (std::size_t j = 1; j < n; ++j) v[j] = T.t(j) / s;
  return GeneratorPair(std::move(u), std::move(v), 1);
}

namespace {

// sin(pi * x) with the argument reduced to the nearest integer first, so
// half-integer frequencies produce exact zeros.
double sin_pi(double x) {
  double m = std::nearbyint(x);
  double r = x - m;
  double s = std::sin(std::numbers::pi * r);
  return static_cast<long long>(m) % 2 == 0 ? s : -s;
}

}  // namespace

ToeplitzSpd prolate(std::size_t n, double omega) {
  if (n < 1) throw DimensionError("prolate: n must be >= 1");
  if (!(omega > 0.0) || omega > 0.5)
    throw DomainError("prolate: omega must lie in (0, 1/2]");
  Vector t(n);
  t[0] = 2.0 * omega;
  for (std::size_t k = 1; k < n; ++k)
    t[k] = 0.0 + sin_pi(2.0 * omega * static_cast<double>(k)) /
                     (std::numbers::pi * static_cast<double>(k));
  return ToeplitzSpd(std::move(t));
}

ToeplitzSpd from_reflection_coeffs(const ReflectionSpec& spec) {
  if (!std::isfinite(spec.t0) || spec.t0 <= 0.0)
    throw DomainError("from_reflection_coeffs: t0 must be positive");
  std::size_t n = spec.rhos.size() + 1;
  for (double r : spec.rhos)
    if (!(std::abs(r) < 1.0))
      throw DomainError(
          "from_reflection_coeffs: coefficients must lie in (-1, 1)");
  Vector t(n, 0.0);
  t[0] = spec.t0;
  if (n == 1) return ToeplitzSpd(std::move(t));

  Vector sines(n - 1), coss(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double s = -spec.rhos[i];
    sines[i] = s;
    coss[i] = std::sqrt((1.0 - std::abs(s)) * (1.0 + std::abs(s)));
  }

  // Each new entry t[j] is pinned by the requirement that elimination step j
  // produce the prescribed sine. Entries of column j at every elimination
  // stage are affine in the unknown t[j], with coefficients driven by the
  // known previous column (ucol); propagating them through the mixed
  // recurrences and solving the step-j constraint recovers t[j].
  double rt0 = std::sqrt(spec.t0);
  Vector ucol(n, 0.0);
  ucol[0] = rt0;
  Vector ua(n, 0.0), ub(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double va = 0.0, vb = 1.0 / rt0;
    ua[0] = 0.0;
    ub[0] = 1.0 / rt0;
    for (std::size_t l = 0; l + 1 < j; ++l) {
      double s = sines[l], c = coss[l];
      va = (va - s * ucol[l]) / c;
      vb = vb / c;
      ua[l + 1] = -s * va + c * ucol[l];
      ub[l + 1] = -s * vb;
    }
    double tj = (sines[j - 1] * ucol[j - 1] - va) / vb;
    t[j] = tj;
    double diag = ucol[j - 1];
    for (std::size_t l = 0; l < j; ++l) ucol[l] = ua[l] + ub[l] * tj;
    ucol[j] = coss[j - 1] * diag;
  }
  return ToeplitzSpd(std::move(t));
}

Vector alternating_rhos(std::size_t count, double magnitude) {
  if (!(magnitude >= 0.0) || magnitude >= 1.0)
    throw DomainError("alternating_rhos: magnitude must lie in [0, 1)");
  Vector rhos(count);
  for (std::size_t i = 0; i < count; ++i)
    rhos[i] = i % 2 == 0 ? magnitude : -magnitude;
  return rhos;
}

Vector random_rhos(std::size_t count, double rho_max, double min_pivot_product,
                   SplitMix64& rng) {
  if (!(rho_max > 0.0) || rho_max >= 1.0)
    throw DomainError("random_rhos: rho_max must lie in (0, 1)");
  if (min_pivot_product < 0.0 || min_pivot_product > 1.0)
    throw DomainError("random_rhos: min_pivot_product must lie in [0, 1]");
  Vector rhos(count);
  double prod = 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    double cap = rho_max;
    if (min_pivot_product > 0.0) {
      double budget = 1.0 - min_pivot_product / prod;
      cap = budget <= 0.0 ? 0.0 : std::min(rho_max, std::sqrt(budget));
    }
    double r = (2.0 * rng.next_double() - 1.0) * cap;
    rhos[i] = r;
    prod *= (1.0 - r * r);
  }
  return rhos;
}

ToeplitzSpd random_spd_toeplitz(std::size_t n, double rho_max,
                                std::uint64_t seed) {
  if (n < 1) throw DimensionError("random_spd_toeplitz: n must be >= 1");
  SplitMix64 rng(seed);
  ReflectionSpec spec;
  spec.t0 = 1.0;
  spec.rhos = random_rhos(n - 1, rho_max, 0.0, rng);
  return from_reflection_coeffs(spec);
}

}  // namespace toepfact
