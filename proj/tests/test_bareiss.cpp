#include <doctest.h>

#include <cmath>

#include "toepfact/bareiss.hpp"
#include "toepfact/core.hpp"
#include "toepfact/errors.hpp"
#include "toepfact/factor.hpp"
#include "toepfact/genmat.hpp"
#include "test_util.hpp"

using namespace toepfact;
using testutil::frob_diff;
using testutil::max_abs_diff;

TEST_CASE("bareiss_init copies the matrix into both sweeps") {
  ToeplitzSpd T({2, 1, 0.3});
  auto st = bareiss_init(T);
  CHECK(st.i == 0);
  CHECK(st.alphas.empty());
  auto dense = T.materialize();
  CHECK(max_abs_diff(st.a_pos, dense) == 0.0);
  CHECK(max_abs_diff(st.a_neg, dense) == 0.0);
}

TEST_CASE("one step eliminates a diagonal in each sweep with exact zeros") {
  ToeplitzSpd T({2, 1, 0.3});
  auto st = bareiss_init(T);
  bareiss_step(st);
  CHECK(st.i == 1);
  REQUIRE(st.alphas.size() == 1);
  CHECK(st.alphas[0] == 0.5);
  // forward sweep: first subdiagonal of rows 1.. is annihilated
  CHECK(st.a_pos(1, 0) == 0.0);
  CHECK(st.a_pos(2, 1) == 0.0);
  // reflected sweep: first superdiagonal of rows 0.. is annihilated
  CHECK(st.a_neg(0, 1) == 0.0);
  CHECK(st.a_neg(1, 2) == 0.0);
  // untouched rows keep their values
  CHECK(st.a_pos(0, 0) == 2.0);
  CHECK(st.a_neg(2, 0) == 0.3);
  // hand-checked updated entries: row1 -= 0.5*row0 of the other sweep
  CHECK(st.a_pos(1, 1) == 2.0 - 0.5 * 1.0);
  CHECK(st.a_pos(1, 2) == 1.0 - 0.5 * 0.3);
}

TEST_CASE("the two sweeps stay mirror images of each other") {
  // Reversing both row and column order exchanges the roles of the forward
  // and reflected eliminations on a symmetric Toeplitz matrix.
  ToeplitzSpd T({2, 1, 0.3});
  std::size_t n = 3;
  auto st = bareiss_init(T);
  for (std::size_t step = 0; step < n - 1; ++step) {
    bareiss_step(st);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        CHECK(st.a_pos(r, c) ==
              doctest::Approx(st.a_neg(n - 1 - r, n - 1 - c))
                  .epsilon(1e-14));
  }
}

TEST_CASE("partially eliminated blocks remain Toeplitz up to rounding") {
  auto T = random_spd_toeplitz(8, 0.6, 77);
  double scale = one_norm(T);
  auto st = bareiss_init(T);
  for (std::size_t step = 1; step <= 7; ++step) {
    bareiss_step(st);
    // rows at or below the step index form the still-active block; its
    // diagonals are constant because every row received the same update
    for (std::size_t r = step; r + 1 < 8; ++r)
      for (std::size_t c = r; c + 1 < 8; ++c)
        CHECK(std::abs(st.a_pos(r + 1, c + 1) - st.a_pos(r, c)) <=
              1e-12 * scale);
  }
}

TEST_CASE("bareiss factor matches the generator-form factorization") {
  for (std::size_t n : {1, 2, 3, 6, 24}) {
    auto T = random_spd_toeplitz(n, 0.7, 1000 + n);
    auto [U, alphas] = bareiss_factor(T);
    auto r = factor(toeplitz_generators(T), Variant::mixed);

    CHECK(max_abs_diff(U, r.U) <= 1e-11 * std::sqrt(one_norm(T)));
    REQUIRE(alphas.size() == n - 1);
    for (std::size_t i = 0; i < alphas.size(); ++i)
      CHECK(alphas[i] == doctest::Approx(r.sines[i]).epsilon(1e-11));

    // strict lower triangle of the returned factor is exactly zero
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK(U(i, j) == 0.0);

    auto gram = matmul(U.transposed(), U);
    auto dense = T.materialize();
    CHECK(frob_diff(gram, dense) <= 1e-13 * frobenius_norm(dense) * n);
  }
}

TEST_CASE("bareiss_solve returns a small-residual solution") {
  SplitMix64 rng(4242);
  for (std::size_t n : {1, 4, 15, 40}) {
    auto T = random_spd_toeplitz(n, 0.6, rng.next());
    Vector x_true = testutil::random_vector(n, rng);
    Vector b = toeplitz_matvec(T, x_true);
    Vector x = bareiss_solve(T, b);
    Vector r = toeplitz_matvec(T, x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
    CHECK(norm2(r) <= 1e-11 * (norm2(b) + 1.0));
  }
}

TEST_CASE("elimination rejects matrices that are not positive definite") {
  // passes the column bound but is indefinite
  ToeplitzSpd T({1.0, 0.9, 0.5});
  CHECK_THROWS_AS(bareiss_factor(T), BreakdownError);

  auto st = bareiss_init(T);
  CHECK_NOTHROW(bareiss_step(st));
  CHECK_THROWS_AS(bareiss_step(st), BreakdownError);

  // a zero pivot denominator is reported as a breakdown, not division
  auto zst = bareiss_init(ToeplitzSpd({1.0, 0.5}));
  zst.a_neg(0, 0) = 0.0;
  CHECK_THROWS_AS(bareiss_step(zst), BreakdownError);
}

TEST_CASE("stepping past the end is a dimension error") {
  ToeplitzSpd T({2, 1});
  auto st = bareiss_init(T);
  bareiss_step(st);
  CHECK_THROWS_AS(bareiss_step(st), DimensionError);
}
