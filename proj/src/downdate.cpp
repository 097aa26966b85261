#include "toepfact/downdate.hpp"

#include <cmath>
#include <utility>

namespace toepfact {

HyperbolicParams rotation_params(double a, double b, std::size_t step) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("rotation_params: non-finite input");
  double aa = std::abs(a), ab = std::abs(b);
  if (aa <= ab)
    throw BreakdownError(
        "downdating breakdown: |a| <= |b|, matrix is not positive definite",
        step);
  HyperbolicParams p;
  p.sin_theta = b / a;
  p.cos_theta = std::sqrt((aa - ab) * (aa + ab)) / aa;
  if (p.cos_theta == 0.0)
    throw BreakdownError(
        "downdating breakdown: matrix is semi-definite at working precision",
        step);
  return p;
}

bool near_breakdown(const HyperbolicParams& p) { return p.cos_theta < 1e-8; }

namespace {

void check_staircase(const Vector& u, const Vector& v, std::size_t k,
                     const char* who) {
  if (u.size() != v.size())
    throw DimensionError(std::string(who) + ": generator length mismatch");
  if (k < 1 || k > u.size())
    throw DimensionError(std::string(who) + ": step index out of range");
  for (std::size_t j = 0; j + 1 < k; ++j)
    if (u[j] != 0.0)
      throw DomainError(std::string(who) + ": u must vanish before the pivot");
  for (std::size_t j = 0; j < k; ++j)
    if (v[j] != 0.0)
      throw DomainError(std::string(who) +
                        ": v must vanish through the pivot position");
}

void flip_to_nonnegative_pivot(Vector& u, std::size_t k) {
  if (u[k - 1] < 0.0)
    for (double& e : u) e = -e;
}

}  // namespace

GeneratorPair::GeneratorPair(Vector u_in, Vector v_in, std::size_t k_in)
    : u(std::move(u_in)), v(std::move(v_in)), k(k_in) {
  validate_finite(u, "GeneratorPair u");
  validate_finite(v, "GeneratorPair v");
  check_staircase(u, v, k, "GeneratorPair");
  flip_to_nonnegative_pivot(u, k);
}

ScaledGeneratorPair::ScaledGeneratorPair(Vector w_in, Vector x_in,
                                         double alpha_in, double beta_in,
                                         std::size_t k_in)
    : w(std::move(w_in)),
      x(std::move(x_in)),
      alpha(alpha_in),
      beta(beta_in),
      k(k_in) {
  validate_finite(w, "ScaledGeneratorPair w");
  validate_finite(x, "ScaledGeneratorPair x");
  if (!std::isfinite(alpha) || alpha <= 0.0 || !std::isfinite(beta) ||
      beta <= 0.0)
    throw DomainError("ScaledGeneratorPair: scales must be positive");
  check_staircase(w, x, k, "ScaledGeneratorPair");
  flip_to_nonnegative_pivot(w, k);
}

namespace {

std::size_t checked_step(std::size_t k, std::size_t n) {
  if (k >= n) throw DimensionError("downdate: no elimination step remains");
  return k;
}

}  // namespace

DowndateResult downdate_hyperbolic(const GeneratorPair& g) {
  std::size_t n = g.n(), k = checked_step(g.k, n);
  HyperbolicParams rot = rotation_params(g.u[k - 1], g.v[k], k);
  double s = rot.sin_theta, c = rot.cos_theta;
  Vector zu = shift_down(g.u);
  Vector u2(n, 0.0), v2(n, 0.0);
  for (std::size_t j = k; j < n; ++j) u2[j] = (zu[j] - s * g.v[j]) / c;
  for (std::size_t j = k + 1; j < n; ++j) v2[j] = (-s * zu[j] + g.v[j]) / c;
  return {GeneratorPair(std::move(u2), std::move(v2), k + 1), rot};
}

DowndateResult downdate_mixed(const GeneratorPair& g) {
  std::size_t n = g.n(), k = checked_step(g.k, n);
  HyperbolicParams rot = rotation_params(g.u[k - 1], g.v[k], k);
  double s = rot.sin_theta, c = rot.cos_theta;
  Vector zu = shift_down(g.u);
  Vector u2(n, 0.0), v2(n, 0.0);
  for (std::size_t j = k + 1; j < n; ++j) v2[j] = (g.v[j] - s * zu[j]) / c;
  for (std::size_t j = k; j < n; ++j) u2[j] = -s * v2[j] + c * zu[j];
  return {GeneratorPair(std::move(u2), std::move(v2), k + 1), rot};
}

DowndateResult downdate_mixed_alt(const GeneratorPair& g) {
  std::size_t n = g.n(), k = checked_step(g.k, n);
  HyperbolicParams rot = rotation_params(g.u[k - 1], g.v[k], k);
  double s = rot.sin_theta, c = rot.cos_theta;
  Vector zu = shift_down(g.u);
  Vector u2(n, 0.0), v2(n, 0.0);
  for (std::size_t j = k; j < n; ++j) u2[j] = (zu[j] - s * g.v[j]) / c;
  for (std::size_t j = k + 1; j < n; ++j) v2[j] = -s * u2[j] + c * g.v[j];
  return {GeneratorPair(std::move(u2), std::move(v2), k + 1), rot};
}

namespace {

constexpr double kScaleHigh = 1e154;
constexpr double kScaleLow = 1e-154;

// Folds a scale that left [kScaleLow, kScaleHigh] into its vector so pivot
// products alpha * w[k] stay representable.
void normalize_scale(double& scale, Vector& vec) {
  if (scale > kScaleHigh || scale < kScaleLow) {
    for (double& e : vec) e *= scale;
    scale = 1.0;
  }
}

}  // namespace

ScaledDowndateResult downdate_scaled_hyperbolic(const ScaledGeneratorPair& g) {
  std::size_t n = g.n(), k = checked_step(g.k, n);
  if (g.alpha != g.beta)
    throw DomainError(
        "downdate_scaled_hyperbolic: scales must agree (alpha == beta)");
  HyperbolicParams rot = rotation_params(g.w[k - 1], g.x[k], k);
  double s = rot.sin_theta, c = rot.cos_theta;
  Vector zw = shift_down(g.w);
  Vector w2(n, 0.0), x2(n, 0.0);
  for (std::size_t j = k; j < n; ++j) w2[j] = zw[j] - s * g.x[j];
  for (std::size_t j = k + 1; j < n; ++j) x2[j] = -s * zw[j] + g.x[j];
  double a2 = g.alpha / c;
  double b2 = a2;
  normalize_scale(a2, w2);
  if (a2 != b2) {  // the shared scale was folded; keep the pair in lockstep
    for (double& e : x2) e *= b2;
    b2 = a2;
  }
  return {ScaledGeneratorPair(std::move(w2), std::move(x2), a2, b2, k + 1),
          rot};
}

ScaledDowndateResult downdate_scaled_mixed(const ScaledGeneratorPair& g) {
  std::size_t n = g.n(), k = checked_step(g.k, n);
  HyperbolicParams rot =
      rotation_params(g.alpha * g.w[k - 1], g.beta * g.x[k], k);
  double s = rot.sin_theta, c = rot.cos_theta;
  Vector zw = shift_down(g.w);
  Vector w2(n, 0.0), x2(n, 0.0);
  double a2 = g.alpha * c;
  double b2 = g.beta / c;
  double xcoef = s * g.alpha / g.beta;
  for (std::size_t j = k + 1; j < n; ++j) x2[j] = g.x[j] - xcoef * zw[j];
  double wcoef = s * b2 / a2;
  for (std::size_t j = k; j < n; ++j) w2[j] = -wcoef * x2[j] + zw[j];
  normalize_scale(a2, w2);
  normalize_scale(b2, x2);
  return {ScaledGeneratorPair(std::move(w2), std::move(x2), a2, b2, k + 1),
          rot};
}

}  // namespace toepfact
