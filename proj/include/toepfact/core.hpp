#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toepfact/errors.hpp"

namespace toepfact {

// Unit roundoff for IEEE binary64.
inline constexpr double kEps = 0x1p-53;

using Vector = std::vector<double>;

// Throws DomainError if any entry is NaN/Inf, DimensionError if empty.
void validate_finite(const Vector& x, const std::string& what);

double norm2(const Vector& x);
double dot(const Vector& a, const Vector& b);

// (0, x[0], ..., x[n-2]); length preserved, never materializes the shift matrix.
Vector shift_down(const Vector& x);

Vector reverse(const Vector& x);

// Row-major dense matrix. All entries finite on construction via from_data.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  static DenseMatrix from_data(std::size_t rows, std::size_t cols,
                               std::vector<double> data);
  static DenseMatrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix transposed() const;
  bool symmetric() const;  // exact entrywise comparison

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
Vector matvec(const DenseMatrix& a, const Vector& x);

// SPD Toeplitz matrix stored as its first column. Construction enforces the
// necessary conditions t0 > 0 and |t_k| < t0; the full SPD check is deferred
// to factorization, which reports Breakdown otherwise.
class ToeplitzSpd {
 public:
  explicit ToeplitzSpd(Vector first_column);
  std::size_t n() const { return t_.size(); }
  double t(std::size_t k) const { return t_[k]; }
  const Vector& first_column() const { return t_; }
  DenseMatrix materialize() const;

 private:
  Vector t_;
};

Vector toeplitz_matvec(const ToeplitzSpd& T, const Vector& x);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
// Throws IllConditionedError if 1000 sweeps do not converge.
std::vector<double> jacobi_eigenvalues(DenseMatrix a);

// Spectral norm: Jacobi for exactly symmetric inputs, otherwise power
// iteration on M^T M (relative tolerance 1e-10, 1000 iteration cap).
double two_norm(const DenseMatrix& m);
double two_norm(const ToeplitzSpd& t);

double frobenius_norm(const DenseMatrix& m);
double frobenius_norm(const ToeplitzSpd& t);
double one_norm(const DenseMatrix& m);  // max absolute column sum
double one_norm(const ToeplitzSpd& t);

}  // namespace toepfact
