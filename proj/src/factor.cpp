#include "toepfact/factor.hpp"

#include <utility>

#include "toepfact/errors.hpp"
#include "toepfact/genmat.hpp"

namespace toepfact {

namespace {

DowndateResult step(const GeneratorPair& g, Variant variant) {
  switch (variant) {
    case Variant::hyperbolic:
      return downdate_hyperbolic(g);
    case Variant::mixed:
      return downdate_mixed(g);
    default:
      return downdate_mixed_alt(g);
  }
}

}  // namespace

FactorResult factor(const GeneratorPair& g0, Variant variant) {
  std::size_t n = g0.n();
  FactorResult res{DenseMatrix(n, n), {}, {}};
  res.sines.reserve(n - 1);
  GeneratorPair g = g0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t j = k - 1; j < n; ++j) res.U(k - 1, j) = g.u[j];
    DowndateResult r = step(g, variant);
    res.sines.push_back(r.rotation.sin_theta);
    if (near_breakdown(r.rotation)) res.warnings.push_back(k);
    g = std::move(r.next);
  }
  if (g.u[n - 1] <= 0.0)
    throw BreakdownError("factor: nonpositive final pivot", n);
  res.U(n - 1, n - 1) = g.u[n - 1];
  return res;
}

ScaledFactorResult factor_scaled(const ScaledGeneratorPair& g0,
                                 ScaledVariant variant) {
  std::size_t n = g0.n();
  ScaledFactorResult res{DenseMatrix(n, n), Vector(n, 0.0), {}, {}};
  res.sines.reserve(n - 1);
  ScaledGeneratorPair g = g0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t j = k - 1; j < n; ++j) res.W(k - 1, j) = g.w[j];
    res.D[k - 1] = g.alpha;
    ScaledDowndateResult r = variant == ScaledVariant::hyperbolic
                                 ? downdate_scaled_hyperbolic(g)
                                 : downdate_scaled_mixed(g);
    res.sines.push_back(r.rotation.sin_theta);
    if (near_breakdown(r.rotation)) res.warnings.push_back(k);
    g = std::move(r.next);
  }
  if (g.w[n - 1] <= 0.0)
    throw BreakdownError("factor: nonpositive final pivot", n);
  res.W(n - 1, n - 1) = g.w[n - 1];
  res.D[n - 1] = g.alpha;
  return res;
}

DenseMatrix ScaledFactorResult::unscaled() const {
  std::size_t n = W.rows();
  DenseMatrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) u(i, j) = D[i] * W(i, j);
  return u;
}

Vector reflection_coefficients(const ToeplitzSpd& T) {
  FactorResult f = factor(toeplitz_generators(T), Variant::mixed);
  Vector rhos(f.sines.size());
  for (std::size_t i = 0; i < rhos.size(); ++i) rhos[i] = -f.sines[i];
  return rhos;
}

}  // namespace toepfact
