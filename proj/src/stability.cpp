#include "toepfact/stability.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "toepfact/bareiss.hpp"
#include "toepfact/errors.hpp"
#include "toepfact/factor.hpp"

namespace toepfact {

double decomposition_error(const DenseMatrix& M, const TriangularFactor& F) {
  if (M.rows() != F.n() || M.cols() != F.n())
    throw DimensionError("decomposition_error: dimension mismatch");
  DenseMatrix prod = F.orientation == Orientation::upper
                         ? matmul(F.U.transposed(), F.U)
                         : matmul(F.U, F.U.transposed());
  DenseMatrix diff(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      diff(i, j) = M(i, j) - prod(i, j);
  return two_norm(diff) / (kEps * two_norm(M));
}

double decomposition_error(const ToeplitzSpd& T, const TriangularFactor& F) {
  return decomposition_error(T.materialize(), F);
}

double scaled_residual(const ToeplitzSpd& T, const Vector& x, const Vector& b) {
  if (x.size() != T.n() || b.size() != T.n())
    throw DimensionError("scaled_residual: dimension mismatch");
  double nx = norm2(x);
  if (nx == 0.0) throw DomainError("scaled_residual: zero solution vector");
  Vector r = toeplitz_matvec(T, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return norm2(r) / (kEps * nx * two_norm(T));
}

double solution_error(const Vector& x_computed, const Vector& x_true) {
  if (x_computed.size() != x_true.size())
    throw DimensionError("solution_error: dimension mismatch");
  double nt = norm2(x_true);
  if (nt == 0.0) throw DomainError("solution_error: zero truth vector");
  double s = 0.0;
  for (std::size_t i = 0; i < x_true.size(); ++i) {
    double d = x_computed[i] - x_true[i];
    s += d * d;
  }
  return std::sqrt(s) / nt;
}

CybenkoBounds cybenko_bounds(const Vector& rhos) {
  CybenkoBounds b;
  double inv_cos2 = 1.0, inv_onemr = 1.0, ratio = 1.0;
  for (double r : rhos) {
    if (!(std::abs(r) < 1.0))
      throw DomainError("cybenko_bounds: coefficients must lie in (-1, 1)");
    inv_cos2 /= (1.0 - r * r);
    inv_onemr /= (1.0 - r);
    ratio *= (1.0 + std::abs(r)) / (1.0 - std::abs(r));
  }
  b.lower = std::max(inv_cos2, inv_onemr);
  b.upper = ratio;
  return b;
}

double inverse_one_norm(const ToeplitzSpd& T) {
  std::size_t n = T.n();
  TriangularFactor upper = cholesky_dense(T.materialize());
  TriangularFactor lower(upper.U.transposed(), Orientation::lower);
  double best = 0.0;
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    Vector col = solve_triangular(upper, solve_triangular(lower, e));
    e[j] = 0.0;
    double s = 0.0;
    for (double v : col) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "bareiss_full",       "bareiss_hyp",
      "bareiss_mixed",      "bareiss_mixed_alt",
      "bareiss_scaled_hyp", "bareiss_scaled_mixed",
      "cholesky",           "levinson"};
  return names;
}

namespace {

Vector solve_with_factor(const TriangularFactor& upper, const Vector& b) {
  TriangularFactor lower(upper.U.transposed(), Orientation::lower);
  return solve_triangular(upper, solve_triangular(lower, b));
}

Variant variant_of(const std::string& name) {
  if (name == "bareiss_hyp") return Variant::hyperbolic;
  if (name == "bareiss_mixed") return Variant::mixed;
  return Variant::mixed_alt;
}

void append_near_breakdown(const std::vector<std::size_t>& steps,
                           std::vector<std::string>& warnings) {
  for (std::size_t s : steps)
    warnings.push_back("near_breakdown step " + std::to_string(s));
}

}  // namespace

std::vector<StabilityReport> run_experiment(const ExperimentInstance& inst,
                                            const ExperimentConfig& cfg) {
  const auto& known = algorithm_names();
  for (const auto& a : cfg.algorithms)
    if (std::find(known.begin(), known.end(), a) == known.end())
      throw DomainError("run_experiment: unknown algorithm " + a);

  const ToeplitzSpd& T = inst.matrix;
  std::size_t n = T.n();

  double cond = 0.0;
  std::vector<std::string> base_warnings;
  try {
    cond = cond_2(T);
  } catch (const Error&) {
    base_warnings.push_back("cond_estimate_failed");
  }

  Vector x_true;
  bool have_truth = cfg.rhs_mode != RhsMode::random;
  Vector b(n, 0.0);
  if (have_truth) {
    x_true.assign(n, 0.0);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    if (cfg.rhs_mode == RhsMode::scaled) scale /= kEps;
    for (std::size_t i = 0; i < n; ++i)
      x_true[i] = i % 2 == 0 ? scale : -scale;
    b = toeplitz_matvec(T, x_true);
  } else {
    SplitMix64 rng(cfg.rhs_seed);
    for (std::size_t i = 0; i < n; ++i) b[i] = 2.0 * rng.next_double() - 1.0;
  }

  std::vector<StabilityReport> reports;
  reports.reserve(cfg.algorithms.size());
  for (const auto& name : cfg.algorithms) {
    StabilityReport rep;
    rep.algorithm = name;
    rep.n = n;
    rep.instance_descriptor = inst.descriptor;
    rep.cond_estimate = cond;
    rep.warnings = base_warnings;
    try {
      Vector x;
      if (name == "cholesky") {
        TriangularFactor f = cholesky_dense(T.materialize());
        rep.decomp_error = decomposition_error(T, f);
        x = solve_with_factor(f, b);
      } else if (name == "levinson") {
        x = levinson_solve(T, b).x;
      } else if (name == "bareiss_full") {
        auto [u, alphas] = bareiss_factor(T);
        TriangularFactor f(std::move(u), Orientation::upper);
        rep.decomp_error = decomposition_error(T, f);
        x = solve_with_factor(f, b);
      } else if (name == "bareiss_scaled_hyp" ||
                 name == "bareiss_scaled_mixed") {
        GeneratorPair g = toeplitz_generators(T);
        ScaledGeneratorPair sg(g.u, g.v, 1.0, 1.0, 1);
        ScaledFactorResult sf = factor_scaled(
            sg, name == "bareiss_scaled_hyp" ? ScaledVariant::hyperbolic
                                             : ScaledVariant::mixed);
        append_near_breakdown(sf.warnings, rep.warnings);
        TriangularFactor f(sf.unscaled(), Orientation::upper);
        rep.decomp_error = decomposition_error(T, f);
        x = solve_with_factor(f, b);
      } else {
        FactorResult fr = factor(toeplitz_generators(T), variant_of(name));
        append_near_breakdown(fr.warnings, rep.warnings);
        TriangularFactor f(std::move(fr.U), Orientation::upper);
        rep.decomp_error = decomposition_error(T, f);
        x = solve_with_factor(f, b);
      }
      rep.scaled_residual = scaled_residual(T, x, b);
      if (have_truth) rep.soln_error = solution_error(x, x_true);
    } catch (const Error& e) {
      rep.error = e.what();
    }
    reports.push_back(std::move(rep));
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const StabilityReport& a, const StabilityReport& b2) {
                     return a.algorithm < b2.algorithm;
                   });
  return reports;
}

std::vector<ReflectionSpec> standard_ensemble(
    const std::vector<std::size_t>& n_values, std::size_t per_n,
    std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<ReflectionSpec> specs;
  specs.reserve(n_values.size() * per_n);
  for (std::size_t n : n_values) {
    for (std::size_t i = 0; i < per_n; ++i) {
      ReflectionSpec spec;
      spec.t0 = 1.0;
      double rho_max = 0.1 + 0.85 * rng.next_double();
      spec.rhos = random_rhos(n > 0 ? n - 1 : 0, rho_max, 1e-3, rng);
      specs.push_back(std::move(spec));
    }
  }
  return specs;
}

}  // namespace toepfact
