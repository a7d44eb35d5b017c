#include "doctest.h"
#include "helpers.hpp"
#include "slant/errors.hpp"

using namespace slant;
using testing::poly;

namespace {
const Complex I{0.0, 1.0};
const DecimationOrder k1{1};
const DecimationOrder k2{2};
}  // namespace

TEST_CASE("products of Laurent polynomials") {
    CHECK(poly({{0, 1}, {1, 1}}) * poly({{0, 1}, {1, -1}}) == poly({{0, 1}, {2, -1}}));
    CHECK(poly({{-2, 1}}) * poly({{3, 1}}) == poly({{1, 1}}));
    CHECK(poly({{-1, 2}, {0, 3}}) * poly({{2, 1}}) == poly({{1, 2}, {2, 3}}));
    CHECK((LaurentPoly{} * poly({{4, 2}})).is_zero());
}

TEST_CASE("cancellation drops coefficients below threshold") {
    const LaurentPoly p = poly({{1, 1.0}}) - poly({{1, 1.0 - 1e-15}});
    CHECK(p.is_zero());
    CHECK(poly({{3, 1e-15}}).support_size() == 0);
}

TEST_CASE("conjugation on the circle") {
    CHECK(conj_on_circle(poly({{1, I}})) == poly({{-1, -I}}));
    CHECK(conj_on_circle(poly({{-1, 2}, {0, 3}, {2, 1}})) == poly({{1, 2}, {0, 3}, {-2, 1}}));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const LaurentPoly p = testing::random_poly(rng, -6, 6);
        CHECK(conj_on_circle(conj_on_circle(p)) == p);
    }
}

TEST_CASE("Riesz projection") {
    CHECK(analytic_project(poly({{-1, 1}, {0, 1}, {1, 1}})) == poly({{0, 1}, {1, 1}}));
    CHECK(analytic_project(poly({{-3, 1}})).is_zero());
}

TEST_CASE("decimation and stretch") {
    CHECK(decimate(poly({{4, 1}}), k2) == poly({{2, 1}}));
    CHECK(decimate(poly({{3, 1}}), k2).is_zero());
    CHECK(decimate(poly({{-4, 5}, {-3, 1}}), k2) == poly({{-2, 5}}));
    CHECK(stretch(poly({{0, 1}, {-1, 2}, {1, 3}}), k2) == poly({{0, 1}, {-2, 2}, {2, 3}}));

    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        const LaurentPoly p = testing::random_poly(rng, -9, 9);
        CHECK(decimate(p, k1) == p);
        CHECK(stretch(p, k1) == p);
        for (int k : {2, 3, 5}) CHECK(decimate(stretch(p, DecimationOrder(k)), DecimationOrder(k)) == p);
    }
}

TEST_CASE("decimation order must be positive") {
    CHECK_THROWS_AS(DecimationOrder(0), InvalidInput);
    CHECK_THROWS_AS(DecimationOrder(-3), InvalidInput);
}

TEST_CASE("backward shift powers") {
    CHECK(backward_shift_pow(poly({{3, 1}, {1, 1}}), k2) == poly({{1, 1}}));
    CHECK(backward_shift_pow(poly({{0, 1}}), k1).is_zero());
    CHECK_THROWS_AS(backward_shift_pow(poly({{-1, 1}, {2, 1}}), k1), InvalidInput);
}

TEST_CASE("inner product convention") {
    // <f, g> = sum f_n conj(g_n)
    CHECK(inner_product(poly({{1, I}}), poly({{1, 1}})) == I);
    CHECK(inner_product(poly({{1, 1}}), poly({{1, I}})) == -I);
    CHECK(norm(poly({{0, 3}, {5, 4}})) == doctest::Approx(5.0));
}

TEST_CASE("evaluation and shifting") {
    const LaurentPoly p = poly({{-1, 2}, {0, 3}, {2, 1}});
    const Complex z = std::polar(1.0, 0.7);
    CHECK(std::abs(p.evaluate(z) - (2.0 / z + 3.0 + z * z)) < 1e-14);
    CHECK(p.shifted(3) == poly({{2, 2}, {3, 3}, {5, 1}}));
    CHECK(p.min_frequency() == -1);
    CHECK(p.max_frequency() == 2);
    CHECK_FALSE(p.is_analytic());
    CHECK(p.shifted(1).is_analytic());
}

TEST_CASE("decimation calculus on random polynomials") {
    std::mt19937_64 rng(13);
    for (int k : {2, 3, 5}) {
        const DecimationOrder kk(k);
        for (int t = 0; t < 30; ++t) {
            const LaurentPoly p = testing::random_poly(rng, -12, 12);
            const LaurentPoly q = testing::random_poly(rng, -12, 12);
            CHECK(std::abs(inner_product(decimate(p, kk), q) - inner_product(p, stretch(q, kk))) < 1e-12);
            CHECK(max_abs_diff(stretch(p * q, kk), stretch(p, kk) * stretch(q, kk)) < 1e-12);
            CHECK(decimate(conj_on_circle(p), kk) == conj_on_circle(decimate(p, kk)));
            CHECK(analytic_project(decimate(p, kk)) == decimate(analytic_project(p), kk));
            CHECK(max_abs_diff(decimate(stretch(q, kk) * p, kk), q * decimate(p, kk)) < 1e-12);
            for (int m = 1; m < k; ++m) {
                CHECK(decimate(stretch(p, kk).shifted(m), kk).is_zero());
                CHECK(decimate(stretch(p, kk).shifted(-m), kk).is_zero());
            }
            const LaurentPoly f = analytic_project(p);
            const LaurentPoly lhs = stretch(f, kk) - stretch(backward_shift_pow(f, k1), kk).shifted(k);
            CHECK(max_abs_diff(lhs, LaurentPoly::constant(f.coeff(0))) < 1e-12);
        }
    }
}
