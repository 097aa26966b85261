#include "toepfact/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace toepfact {

void validate_finite(const Vector& x, const std::string& what) {
  if (x.empty()) throw DimensionError(what + ": length must be >= 1");
  for (double e : x) {
    if (!std::isfinite(e)) throw DomainError(what + ": non-finite entry");
  }
}

double norm2(const Vector& x) {
  double s = 0.0;
  for (double e : x) s += e * e;
  return std::sqrt(s);
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector shift_down(const Vector& x) {
  Vector r(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) r[i] = x[i - 1];
  return r;
}

Vector reverse(const Vector& x) {
  return Vector(x.rbegin(), x.rend());
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0)
    throw DimensionError("DenseMatrix: dimensions must be >= 1");
}

DenseMatrix DenseMatrix::from_data(std::size_t rows, std::size_t cols,
                                   std::vector<double> data) {
  if (data.size() != rows * cols)
    throw DimensionError("DenseMatrix: data size mismatch");
  DenseMatrix m(rows, cols);
  for (double e : data) {
    if (!std::isfinite(e)) throw DomainError("DenseMatrix: non-finite entry");
  }
  m.data_ = std::move(data);
  return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool DenseMatrix::symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: shape mismatch");
  DenseMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: shape mismatch");
  Vector r(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

ToeplitzSpd::ToeplitzSpd(Vector first_column) : t_(std::move(first_column)) {
  validate_finite(t_, "ToeplitzSpd");
  if (t_[0] <= 0.0)
    throw NotPositiveDefiniteError("ToeplitzSpd: diagonal must be positive", 0);
  for (std::size_t k = 1; k < t_.size(); ++k) {
    if (std::abs(t_[k]) >= t_[0])
      throw NotPositiveDefiniteError(
          "ToeplitzSpd: |t_k| < t_0 violated", k);
  }
}

DenseMatrix ToeplitzSpd::materialize() const {
  std::size_t m = n();
  DenseMatrix r(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      r(i, j) = t_[i >= j ? i - j : j - i];
  return r;
}

Vector toeplitz_matvec(const ToeplitzSpd& T, const Vector& x) {
  std::size_t m = T.n();
  if (x.size() != m) throw DimensionError("toeplitz_matvec: length mismatch");
  Vector r(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      s += T.t(i >= j ? i - j : j - i) * x[j];
    r[i] = s;
  }
  return r;
}

std::vector<double> jacobi_eigenvalues(DenseMatrix a) {
  if (a.rows() != a.cols())
    throw DimensionError("jacobi_eigenvalues: matrix must be square");
  std::size_t n = a.rows();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  scale = std::sqrt(scale);
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double tol = 1e-15 * scale;
  const int max_sweeps = 1000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol) {
      std::vector<double> ev(n);
      for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          double apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
      }
    }
  }
  throw IllConditionedError("jacobi_eigenvalues: no convergence in 1000 sweeps");
}

double two_norm(const DenseMatrix& m) {
  if (m.symmetric()) {
    auto ev = jacobi_eigenvalues(m);
    double best = 0.0;
    for (double e : ev) best = std::max(best, std::abs(e));
    return best;
  }
  // Power iteration on M^T M; deterministic start vector.
  std::size_t n = m.cols();
  Vector v(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) v[i] += 1e-3 * static_cast<double>(i % 7);
  double nv = norm2(v);
  for (double& e : v) e /= nv;
  double lambda = 0.0;
  const double rel_tol = 1e-10;
  for (int it = 0; it < 1000; ++it) {
    Vector mv = matvec(m, v);
    Vector w = matvec(m.transposed(), mv);
    double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    double next = std::sqrt(nw);  // |w| approximates lambda_max(M^T M) = ||M||^2
    for (double& e : w) e /= nw;
    v = std::move(w);
    if (it > 0 && std::abs(next - lambda) <= rel_tol * next) return next;
    lambda = next;
  }
  throw IllConditionedError("two_norm: power iteration did not converge");
}

double two_norm(const ToeplitzSpd& t) { return two_norm(t.materialize()); }

double frobenius_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (double e : m.data()) s += e * e;
  return std::sqrt(s);
}

double frobenius_norm(const ToeplitzSpd& t) {
  return frobenius_norm(t.materialize());
}

double one_norm(const DenseMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double one_norm(const ToeplitzSpd& t) { return one_norm(t.materialize()); }

}  // namespace toepfact
