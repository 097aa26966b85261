#include <doctest.h>

#include <cmath>

#include "toepfact/core.hpp"
#include "toepfact/errors.hpp"
#include "toepfact/factor.hpp"
#include "toepfact/genmat.hpp"
#include "test_util.hpp"

using namespace toepfact;
using testutil::frob_diff;
using testutil::max_abs_diff;

namespace {

// Largest relative deviation of U^T U from M, in units of machine epsilon.
double reconstruction_error(const DenseMatrix& dense, const DenseMatrix& U) {
  auto gram = matmul(U.transposed(), U);
  return frob_diff(gram, dense) / (0x1p-53 * frobenius_norm(dense));
}

double reconstruction_error(const ToeplitzSpd& T, const DenseMatrix& U) {
  return reconstruction_error(T.materialize(), U);
}

// The displacement-rank-2 matrix generated by u=(5,4,3), v=(0,3,1). Its
// diagonal is not constant, so it exercises the non-Toeplitz input path.
DenseMatrix worked_example_matrix() {
  return DenseMatrix::from_data(
      3, 3, {25, 20, 15, 20, 32, 29, 15, 29, 40});
}

}  // namespace

TEST_CASE("toeplitz_generators reproduces the displacement of T") {
  ToeplitzSpd T({25, 20, 15});
  auto g = toeplitz_generators(T);
  CHECK(g.u == Vector{5, 4, 3});
  CHECK(g.v == Vector{0, 4, 3});
  CHECK(g.k == 1);

  // u u^T - v v^T must equal T - (T shifted down the diagonal)
  auto d = testutil::displacement(g.u, g.v);
  auto dense = T.materialize();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double expect = dense(i, j);
      if (i > 0 && j > 0) expect -= dense(i - 1, j - 1);
      CHECK(d(i, j) == doctest::Approx(expect).epsilon(1e-14));
    }

  // squared-norm difference of the generators telescopes to t0
  CHECK(dot(g.u, g.u) - dot(g.v, g.v) == doctest::Approx(25.0).epsilon(1e-14));
}

TEST_CASE("3x3 worked factorization matches frozen entries") {
  GeneratorPair g({5, 4, 3}, {0, 3, 1}, 1);
  auto dense = worked_example_matrix();

  for (Variant variant : {Variant::hyperbolic, Variant::mixed,
                          Variant::mixed_alt}) {
    CAPTURE(int(variant));
    auto r = factor(g, variant);
    CHECK(r.U.rows() == 3);
    // row 0 is the generator itself
    CHECK(r.U(0, 0) == 5.0);
    CHECK(r.U(0, 1) == 4.0);
    CHECK(r.U(0, 2) == 3.0);
    // strict lower triangle holds exact zeros
    CHECK(r.U(1, 0) == 0.0);
    CHECK(r.U(2, 0) == 0.0);
    CHECK(r.U(2, 1) == 0.0);
    CHECK(r.U(1, 1) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(r.U(1, 2) == doctest::Approx(4.25).epsilon(1e-15));
    CHECK(r.U(2, 2) == doctest::Approx(3.59687364248454).epsilon(1e-14));
    REQUIRE(r.sines.size() == 2);
    CHECK(r.sines[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(r.sines[1] == doctest::Approx(-0.4375).epsilon(1e-15));
    CHECK(r.warnings.empty());
    CHECK(reconstruction_error(dense, r.U) < 16.0);
  }
}

TEST_CASE("3x3 scaled factorizations carry the expected scale sequences") {
  ScaledGeneratorPair sg({5, 4, 3}, {0, 3, 1}, 1.0, 1.0, 1);
  auto dense = worked_example_matrix();

  auto hyp = factor_scaled(sg, ScaledVariant::hyperbolic);
  REQUIRE(hyp.D.size() == 3);
  CHECK(hyp.D[0] == 1.0);
  CHECK(hyp.D[1] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(hyp.D[2] == doctest::Approx(1.3900960937138318).epsilon(1e-14));
  CHECK(reconstruction_error(dense, hyp.unscaled()) < 16.0);

  auto mix = factor_scaled(sg, ScaledVariant::mixed);
  CHECK(mix.D[0] == 1.0);
  CHECK(mix.D[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(mix.D[2] == doctest::Approx(0.7193747284969079).epsilon(1e-14));
  CHECK(reconstruction_error(dense, mix.unscaled()) < 16.0);

  // both scaled forms agree with the plain factorization after unscaling
  auto plain = factor(GeneratorPair({5, 4, 3}, {0, 3, 1}, 1),
                      Variant::hyperbolic);
  CHECK(max_abs_diff(hyp.unscaled(), plain.U) <= 1e-13 * 5.0);
  CHECK(max_abs_diff(mix.unscaled(), plain.U) <= 1e-13 * 5.0);
  CHECK(max_abs_diff(Vector(hyp.sines), Vector(plain.sines)) <= 1e-14);
}

TEST_CASE("n=1 factorization is the scalar square root") {
  ToeplitzSpd T({9.0});
  auto r = factor(toeplitz_generators(T), Variant::mixed);
  CHECK(r.U(0, 0) == 3.0);
  CHECK(r.sines.empty());
  CHECK(r.warnings.empty());
}

TEST_CASE("all variants reconstruct random well-conditioned matrices") {
  SplitMix64 rng(101);
  for (std::size_t n : {2, 5, 17, 40}) {
    auto T = random_spd_toeplitz(n, 0.65, rng.next());
    auto g = toeplitz_generators(T);
    ScaledGeneratorPair sg(g.u, g.v, 1.0, 1.0, g.k);
    for (Variant variant : {Variant::hyperbolic, Variant::mixed,
                            Variant::mixed_alt}) {
      auto r = factor(g, variant);
      CHECK(reconstruction_error(T, r.U) < 64.0 * double(n));
    }
    for (ScaledVariant variant : {ScaledVariant::hyperbolic,
                                  ScaledVariant::mixed}) {
      auto r = factor_scaled(sg, variant);
      CHECK(reconstruction_error(T, r.unscaled()) < 64.0 * double(n));
    }
  }
}

TEST_CASE("factor rejects an indefinite first column") {
  // t passes the column-wise bound |t_k| < t0 but fails positive
  // definiteness at the second elimination step.
  ToeplitzSpd T({1.0, 0.9, 0.5});
  auto g = toeplitz_generators(T);
  CHECK_THROWS_AS(factor(g, Variant::hyperbolic), BreakdownError);
  CHECK_THROWS_AS(factor(g, Variant::mixed), BreakdownError);
  CHECK_THROWS_AS(factor(g, Variant::mixed_alt), BreakdownError);
  ScaledGeneratorPair sg(g.u, g.v, 1.0, 1.0, g.k);
  CHECK_THROWS_AS(factor_scaled(sg, ScaledVariant::hyperbolic),
                  BreakdownError);
  CHECK_THROWS_AS(factor_scaled(sg, ScaledVariant::mixed), BreakdownError);
}

TEST_CASE("sines recover the reflection coefficients with flipped sign") {
  Vector rhos{0.5, -0.3, 0.12, 0.41};
  auto T = from_reflection_coeffs({2.0, rhos});
  auto got = reflection_coefficients(T);
  REQUIRE(got.size() == rhos.size());
  for (std::size_t i = 0; i < rhos.size(); ++i)
    CHECK(got[i] == doctest::Approx(rhos[i]).epsilon(1e-12));

  // all plain variants produce the same sine sequence
  auto g = toeplitz_generators(T);
  auto hs = factor(g, Variant::hyperbolic).sines;
  auto ms = factor(g, Variant::mixed).sines;
  auto as = factor(g, Variant::mixed_alt).sines;
  CHECK(max_abs_diff(Vector(hs), Vector(ms)) <= 1e-13);
  CHECK(max_abs_diff(Vector(hs), Vector(as)) <= 1e-13);
  for (std::size_t i = 0; i < rhos.size(); ++i)
    CHECK(hs[i] == doctest::Approx(-rhos[i]).epsilon(1e-12));
}

TEST_CASE("scaled factors stay finite across a long growing recurrence") {
  // Uniform-magnitude reflection coefficients keep every rotation angle
  // fixed, so the hyperbolic scale grows geometrically over 49 steps.
  // (Much past n=50 at this angle the accumulated hyperbolic error
  // overtakes the shrinking pivot and the downdating honestly breaks.)
  std::size_t n = 50;
  Vector rhos = alternating_rhos(n - 1, 0.5);
  auto T = from_reflection_coeffs({1.0, rhos});
  auto g = toeplitz_generators(T);
  ScaledGeneratorPair sg(g.u, g.v, 1.0, 1.0, g.k);

  auto hyp = factor_scaled(sg, ScaledVariant::hyperbolic);
  auto mix = factor_scaled(sg, ScaledVariant::mixed);
  for (const auto& r : {hyp, mix}) {
    for (double d : r.D) {
      CHECK(std::isfinite(d));
      CHECK(d > 0.0);
    }
  }
  // sqrt(1 - 0.25)^-49 is about 1.2e3: the growth is real, not cosmetic
  CHECK(hyp.D.back() > 1e2);

  // error bounds: hyperbolic degrades with the product of rotation norms,
  // the mixed form only quadratically in n
  double norm_product = 1.0;
  for (double s : hyp.sines)
    norm_product *= (1.0 + std::abs(s)) / std::sqrt((1 - s) * (1 + s));
  CHECK(reconstruction_error(T, hyp.unscaled()) <
        16.0 * double(n) * norm_product);
  CHECK(reconstruction_error(T, mix.unscaled()) < 64.0 * double(n * n));
}

TEST_CASE("scale normalization folds extreme scales back into the vectors") {
  // Scales this close to the working range edge cannot arise from a
  // representable SPD input, so the guard is driven directly: one step
  // pushes the scale across the fold threshold and the result must carry
  // the same represented generators with a moderate scale.
  double big = 9e153;
  Vector w{5e-150, 4e-150, 3e-150};
  Vector x{0.0, 3e-150, 1e-150};
  ScaledGeneratorPair sg(w, x, big, big, 1);
  auto out = downdate_scaled_hyperbolic(sg);
  // alpha/cos crossed 1e154, so both scales fold back to one
  CHECK(out.next.alpha == 1.0);
  CHECK(out.next.beta == 1.0);
  // the inputs are the 3x3 worked example times big*1e-150, so the
  // represented second generator entry is 4 * big * 1e-150
  double represented = out.next.alpha * out.next.w[1];
  CHECK(represented == doctest::Approx(4e-150 * big).epsilon(1e-12));

  // low-side fold through the mixed form, whose alpha shrinks by cos
  double tiny = 1.2e-154;
  Vector wl{5e150, 4e150, 3e150};
  Vector xl{0.0, 3e150, 1e150};
  ScaledGeneratorPair sl(wl, xl, tiny, tiny, 1);
  auto low = downdate_scaled_mixed(sl);
  CHECK(low.next.alpha == 1.0);  // tiny*cos crossed 1e-154 and folded
  CHECK(low.next.beta > 1e-154);
  double rep_low = low.next.alpha * low.next.w[1];
  CHECK(rep_low == doctest::Approx(0.8 * 5e150 * tiny).epsilon(1e-12));
}
