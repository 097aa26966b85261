#include "toepfact/bareiss.hpp"

#include <cmath>
#include <utility>

#include "toepfact/errors.hpp"
#include "toepfact/solvers.hpp"

namespace toepfact {

BareissState bareiss_init(const ToeplitzSpd& T) {
  DenseMatrix m = T.materialize();
  return BareissState{m, m, 0, {}};
}

void bareiss_step(BareissState& st) {
  std::size_t n = st.a_pos.rows();
  std::size_t i = st.i + 1;  // 1-based step about to run
  if (i >= n) throw DimensionError("bareiss_step: no step remains");
  double num = st.a_pos(i, 0);
  double den = st.a_neg(0, 0);
  if (den == 0.0)
    throw BreakdownError("bareiss: zero pivot in multiplier", i);
  if (std::abs(num) >= std::abs(den))
    throw BreakdownError(
        "bareiss: |multiplier| >= 1, matrix is not positive definite", i);
  double alpha = num / den;

  // The forward update consumes pre-step rows of the reflected sweep and
  // vice versa, so the rows the reflected update reads must be snapshotted
  // before the forward update overwrites them.
  DenseMatrix pos_old = st.a_pos;
  for (std::size_t j = i; j < n; ++j)
    for (std::size_t c = 0; c < n; ++c)
      st.a_pos(j, c) -= alpha * st.a_neg(j - i, c);
  for (std::size_t j = 0; j + i < n; ++j)
    for (std::size_t c = 0; c < n; ++c)
      st.a_neg(j, c) -= alpha * pos_old(j + i, c);

  // Entries annihilated by this step are zero in exact arithmetic; store
  // them exactly so the trapezoids are structural.
  for (std::size_t j = i; j < n; ++j) st.a_pos(j, j - i) = 0.0;
  for (std::size_t j = 0; j + i < n; ++j) st.a_neg(j, j + i) = 0.0;

  st.alphas.push_back(alpha);
  st.i = i;
}

std::pair<DenseMatrix, Vector> bareiss_factor(const ToeplitzSpd& T) {
  BareissState st = bareiss_init(T);
  std::size_t n = st.a_pos.rows();
  for (std::size_t i = 1; i < n; ++i) bareiss_step(st);
  DenseMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double d = st.a_pos(k, k);
    if (d <= 0.0)
      throw BreakdownError("bareiss: nonpositive diagonal after elimination",
                           k + 1);
    double scale = 1.0 / std::sqrt(d);
    for (std::size_t c = k; c < n; ++c) u(k, c) = st.a_pos(k, c) * scale;
  }
  return {std::move(u), std::move(st.alphas)};
}

Vector bareiss_solve(const ToeplitzSpd& T, const Vector& b) {
  auto [u, alphas] = bareiss_factor(T);
  TriangularFactor upper(std::move(u), Orientation::upper);
  TriangularFactor lower(upper.U.transposed(), Orientation::lower);
  Vector y = solve_triangular(lower, b);
  return solve_triangular(upper, y);
}

}  // namespace toepfact
