#include "toepfact/solvers.hpp"

#include <cmath>
#include <utility>

#include "toepfact/errors.hpp"

namespace toepfact {

TriangularFactor::TriangularFactor(DenseMatrix m, Orientation o)
    : U(std::move(m)), orientation(o) {
  if (U.rows() != U.cols())
    throw DimensionError("TriangularFactor: matrix must be square");
  for (std::size_t i = 0; i < U.rows(); ++i) {
    if (!(U(i, i) > 0.0))
      throw DomainError("TriangularFactor: diagonal must be positive");
    for (std::size_t j = i + 1; j < U.cols(); ++j) {
      double outside = orientation == Orientation::upper ? U(j, i) : U(i, j);
      if (outside != 0.0)
        throw DomainError(
            "TriangularFactor: entries outside the triangle must be zero");
    }
  }
}

TriangularFactor cholesky_dense(const DenseMatrix& M) {
  if (!M.symmetric())
    throw DomainError("cholesky_dense: matrix must be symmetric");
  std::size_t n = M.rows();
  DenseMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = M(k, k);
    for (std::size_t i = 0; i < k; ++i) s -= u(i, k) * u(i, k);
    if (s <= 0.0)
      throw NotPositiveDefiniteError("cholesky_dense: nonpositive pivot", k);
    double d = std::sqrt(s);
    u(k, k) = d;
    for (std::size_t j = k + 1; j < n; ++j) {
      double t = M(k, j);
      for (std::size_t i = 0; i < k; ++i) t -= u(i, k) * u(i, j);
      u(k, j) = t / d;
    }
  }
  return TriangularFactor(std::move(u), Orientation::upper);
}

Vector solve_triangular(const TriangularFactor& F, const Vector& b) {
  std::size_t n = F.n();
  if (b.size() != n)
    throw DimensionError("solve_triangular: dimension mismatch");
  Vector x(n, 0.0);
  if (F.orientation == Orientation::upper) {
    for (std::size_t ii = n; ii-- > 0;) {
      double s = b[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= F.U(ii, j) * x[j];
      if (F.U(ii, ii) == 0.0)
        throw ZeroPivotError("solve_triangular: zero diagonal entry");
      x[ii] = s / F.U(ii, ii);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double s = b[i];
      for (std::size_t j = 0; j < i; ++j) s -= F.U(i, j) * x[j];
      if (F.U(i, i) == 0.0)
        throw ZeroPivotError("solve_triangular: zero diagonal entry");
      x[i] = s / F.U(i, i);
    }
  }
  return x;
}

LevinsonResult levinson_solve(const ToeplitzSpd& T, const Vector& b) {
  std::size_t n = T.n();
  if (b.size() != n) throw DimensionError("levinson_solve: dimension mismatch");
  LevinsonResult res;
  res.x.assign(n, 0.0);
  res.x[0] = b[0] / T.t(0);
  if (n == 1) return res;

  res.sines.assign(n - 1, 0.0);
  Vector y(n, 0.0);  // backward prediction coefficients of the current order
  y[0] = -T.t(1) / T.t(0);
  res.sines[0] = T.t(1) / T.t(0);
  double beta = (1.0 - y[0] * y[0]) * T.t(0);

  Vector ynew(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    if (beta <= 0.0)
      throw BreakdownError("levinson: prediction-error energy is nonpositive",
                           m);
    double mu = b[m];
    for (std::size_t i = 0; i < m; ++i) mu -= T.t(m - i) * res.x[i];
    mu /= beta;
    for (std::size_t i = 0; i < m; ++i) res.x[i] += mu * y[m - 1 - i];
    res.x[m] = mu;
    if (m + 1 < n) {
      double alpha = T.t(m + 1);
      for (std::size_t i = 0; i < m; ++i) alpha += T.t(m - i) * y[i];
      alpha = -alpha / beta;
      res.sines[m] = -alpha;
      for (std::size_t i = 0; i < m; ++i) ynew[i] = y[i] + alpha * y[m - 1 - i];
      ynew[m] = alpha;
      for (std::size_t i = 0; i <= m; ++i) y[i] = ynew[i];
      beta *= (1.0 - alpha * alpha);
    }
  }
  return res;
}

double cond_2(const ToeplitzSpd& T) {
  auto ev = jacobi_eigenvalues(T.materialize());
  double maxabs = 0.0, minabs = std::abs(ev[0]);
  for (double e : ev) {
    double a = std::abs(e);
    if (a > maxabs) maxabs = a;
    if (a < minabs) minabs = a;
  }
  if (minabs == 0.0)
    throw IllConditionedError("cond_2: singular at working precision");
  return maxabs / minabs;
}

}  // namespace toepfact
