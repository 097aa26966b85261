// Python bindings for the main operations. Toeplitz matrices cross the
// boundary as their first column (a list of floats), dense factors as a
// list of rows.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "toepfact/bareiss.hpp"
#include "toepfact/core.hpp"
#include "toepfact/errors.hpp"
#include "toepfact/factor.hpp"
#include "toepfact/genmat.hpp"
#include "toepfact/solvers.hpp"
#include "toepfact/stability.hpp"

namespace py = pybind11;
using namespace toepfact;

namespace {

using Rows = std::vector<std::vector<double>>;

Rows to_rows(const DenseMatrix& m) {
  Rows rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

DenseMatrix from_rows(const Rows& rows) {
  if (rows.empty()) throw DimensionError("matrix must have at least one row");
  DenseMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw DimensionError("rows must all have the same length");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// The CLI registry names the generator variants with a bareiss_ prefix;
// accept those spellings here too so the two surfaces are interchangeable.
std::string canonical_variant(const std::string& name) {
  if (name == "bareiss_hyp") return "hyperbolic";
  if (name == "bareiss_mixed") return "mixed";
  if (name == "bareiss_mixed_alt") return "mixed_alt";
  if (name == "bareiss_scaled_hyp") return "scaled_hyperbolic";
  if (name == "bareiss_scaled_mixed") return "scaled_mixed";
  if (name == "bareiss_full") return "bareiss";
  return name;
}

std::pair<Rows, Vector> factor_named(const Vector& t,
                                     const std::string& name) {
  ToeplitzSpd T(t);
  const std::string variant = canonical_variant(name);
  if (variant == "bareiss") {
    auto [U, alphas] = bareiss_factor(T);
    return {to_rows(U), alphas};
  }
  if (variant == "cholesky")
    return {to_rows(cholesky_dense(T.materialize()).U), Vector{}};
  GeneratorPair g = toeplitz_generators(T);
  if (variant == "scaled_hyperbolic" || variant == "scaled_mixed") {
    ScaledGeneratorPair sg(g.u, g.v, 1.0, 1.0, g.k);
    auto r = factor_scaled(sg, variant == "scaled_hyperbolic"
                                   ? ScaledVariant::hyperbolic
                                   : ScaledVariant::mixed);
    return {to_rows(r.unscaled()), r.sines};
  }
  Variant v = Variant::mixed;
  if (variant == "hyperbolic")
    v = Variant::hyperbolic;
  else if (variant == "mixed_alt")
    v = Variant::mixed_alt;
  else if (variant != "mixed")
    throw DomainError("unknown variant: " + name);
  auto r = factor(g, v);
  return {to_rows(r.U), r.sines};
}

Vector solve_upper_pair(const DenseMatrix& u, const Vector& b) {
  TriangularFactor lower(u.transposed(), Orientation::lower);
  TriangularFactor upper(u, Orientation::upper);
  return solve_triangular(upper, solve_triangular(lower, b));
}

Vector solve_named(const Vector& t, const Vector& b,
                   const std::string& method) {
  ToeplitzSpd T(t);
  const std::string variant = canonical_variant(method);
  if (variant == "bareiss") return bareiss_solve(T, b);
  if (variant == "levinson") return levinson_solve(T, b).x;
  if (T.n() != b.size())
    throw DimensionError("right-hand side length does not match the matrix");
  return solve_upper_pair(from_rows(factor_named(t, variant).first), b);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Cholesky factorization of symmetric positive definite Toeplitz "
      "matrices by generator downdating";

  py::register_exception<Error>(m, "Error");

  m.def(
      "prolate",
      [](std::size_t n, double omega) { return prolate(n, omega).first_column(); },
      py::arg("n"), py::arg("omega"),
      "First column of the prolate matrix: t0 = 2*omega, "
      "tk = sin(2*pi*omega*k)/(pi*k).");

  m.def(
      "from_reflection_coeffs",
      [](const Vector& rhos, double t0) {
        return from_reflection_coeffs({t0, rhos}).first_column();
      },
      py::arg("rhos"), py::arg("t0") = 1.0,
      "First column of the SPD Toeplitz matrix with the given reflection "
      "coefficients.");

  m.def(
      "random_spd_toeplitz",
      [](std::size_t n, double rho_max, std::uint64_t seed) {
        return random_spd_toeplitz(n, rho_max, seed).first_column();
      },
      py::arg("n"), py::arg("rho_max") = 0.9, py::arg("seed") = 0,
      "Deterministic random SPD Toeplitz instance, returned as its first "
      "column.");

  m.def(
      "reflection_coefficients",
      [](const Vector& t) { return reflection_coefficients(ToeplitzSpd(t)); },
      py::arg("t"),
      "Reflection coefficients of the SPD Toeplitz matrix with first "
      "column t.");

  m.def(
      "materialize",
      [](const Vector& t) { return to_rows(ToeplitzSpd(t).materialize()); },
      py::arg("t"), "Dense rows of the Toeplitz matrix with first column t.");

  m.def("factor", &factor_named, py::arg("t"), py::arg("variant") = "mixed",
        "Upper triangular U with U'U = T and the rotation sine sequence.\n"
        "Variants: hyperbolic, mixed, mixed_alt, scaled_hyperbolic, "
        "scaled_mixed, bareiss, cholesky (empty sine sequence). The CLI "
        "registry spellings (bareiss_hyp, bareiss_scaled_mixed, ...) are "
        "accepted as aliases.");

  m.def("solve", &solve_named, py::arg("t"), py::arg("b"),
        py::arg("method") = "bareiss",
        "Solution of T x = b. Methods: bareiss, levinson, cholesky, or any "
        "factor variant name, which solves the two triangular systems with "
        "that variant's factor.");

  m.def(
      "cond_2",
      [](const Vector& t) { return cond_2(ToeplitzSpd(t)); }, py::arg("t"),
      "Spectral condition number estimate.");

  m.def(
      "cybenko_bounds",
      [](const Vector& rhos) {
        auto b = cybenko_bounds(rhos);
        return std::make_pair(b.lower, b.upper);
      },
      py::arg("rhos"),
      "Lower and upper bounds on t0 * ||inverse(T)||_1 from the reflection "
      "coefficients.");

  m.def(
      "scaled_residual",
      [](const Vector& t, const Vector& x, const Vector& b) {
        return scaled_residual(ToeplitzSpd(t), x, b);
      },
      py::arg("t"), py::arg("x"), py::arg("b"),
      "||Tx - b|| / (eps ||x|| ||T||).");

  m.def(
      "decomposition_error",
      [](const Vector& t, const Rows& u) {
        return decomposition_error(
            ToeplitzSpd(t), TriangularFactor(from_rows(u), Orientation::upper));
      },
      py::arg("t"), py::arg("u"), "||T - U'U|| / (eps ||T||).");
}
