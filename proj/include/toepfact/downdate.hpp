#pragma once

#include <cstddef>

#include "toepfact/core.hpp"
#include "toepfact/errors.hpp"

namespace toepfact {

// Parameters of an elementary hyperbolic rotation. Always |sin_theta| < 1 and
// 0 < cos_theta <= 1 on construction through rotation_params.
struct HyperbolicParams {
  double sin_theta = 0.0;
  double cos_theta = 1.0;

  // Spectral norm of the 2x2 rotation, (1 + |sin|) / cos.
  double norm() const { return (1.0 + (sin_theta < 0 ? -sin_theta : sin_theta)) / cos_theta; }
};

// Computes the rotation that zeroes b against a: sin = b/a,
// cos = sqrt((|a| - |b|) * (|a| + |b|)) / |a|. The factored difference keeps
// cos accurate when |b| is close to |a|. Throws BreakdownError when
// |a| <= |b| (the implied matrix is not positive definite) or when the
// product underflows to cos == 0 (semi-definite at working precision).
// `step` is attached to the error for diagnostics only.
HyperbolicParams rotation_params(double a, double b, std::size_t step = 0);

// True when the rotation is close enough to singular that results carry a
// large forward error (cos below 1e-8).
bool near_breakdown(const HyperbolicParams& p);

// Generator pair positioned before elimination step k (1-based). Invariants,
// enforced on construction: u[j] = 0 for j < k and v[j] = 0 for j <= k
// (1-based positions, exact zeros), both vectors the same length n with
// 1 <= k <= n, all entries finite. The sign of u is normalized so the pivot
// entry u[k] is non-negative; u u^T - v v^T is unchanged by the flip.
struct GeneratorPair {
  Vector u;
  Vector v;
  std::size_t k = 1;

  GeneratorPair(Vector u, Vector v, std::size_t k);

  std::size_t n() const { return u.size(); }
  // Pivot entry u[k] in 1-based terms.
  double pivot() const { return u[k - 1]; }
};

// One elimination step, returning the rotation used and the generators
// advanced to step k + 1 (positions that the recurrences guarantee to vanish
// are stored as exact zeros).
struct DowndateResult {
  GeneratorPair next;
  HyperbolicParams rotation;
};

// u' = (Zu - sin v) / cos, v' = (-sin Zu + v) / cos.
DowndateResult downdate_hyperbolic(const GeneratorPair& g);

// v' = (v - sin Zu) / cos first, then u' = -sin v' + cos Zu.
DowndateResult downdate_mixed(const GeneratorPair& g);

// u' = (Zu - sin v) / cos first, then v' = -sin u' + cos v.
DowndateResult downdate_mixed_alt(const GeneratorPair& g);

// Scaled generator pair: the represented generators are alpha * w and
// beta * x. Same staircase invariants as GeneratorPair on w and x;
// alpha > 0 and beta > 0. The sign of w is normalized like u above.
struct ScaledGeneratorPair {
  Vector w;
  Vector x;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t k = 1;

  ScaledGeneratorPair(Vector w, Vector x, double alpha, double beta,
                      std::size_t k);

  std::size_t n() const { return w.size(); }
  double pivot() const { return alpha * w[k - 1]; }
};

struct ScaledDowndateResult {
  ScaledGeneratorPair next;
  HyperbolicParams rotation;
};

// Division-free update with a shared scale; requires alpha == beta
// (DomainError otherwise). Rotation from (w[k], x[k+1]);
// alpha' = beta' = alpha / cos, w' = Zw - sin x, x' = -sin Zw + x.
// The scales grow monotonically, so when they pass 1e154 they are folded
// into the vectors and reset to 1 to prevent overflow in pivot products.
ScaledDowndateResult downdate_scaled_hyperbolic(const ScaledGeneratorPair& g);

// Division-free update with independent scales. Rotation from
// (alpha w[k], beta x[k+1]); alpha' = alpha cos, beta' = beta / cos,
// x' = x - (sin alpha / beta) Zw, w' = -(sin beta' / alpha') x' + Zw.
// alpha shrinks and beta grows, so both directions are guarded: scales
// outside [1e-154, 1e154] are folded into the vectors and reset to 1.
ScaledDowndateResult downdate_scaled_mixed(const ScaledGeneratorPair& g);

}  // namespace toepfact
