#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eigenflow/exponents.hpp"

using namespace eigenflow;

TEST_CASE("rational_from_double is exact for dyadic inputs") {
    CHECK(rational_from_double(3.0) == Rational(3));
    CHECK(rational_from_double(2.5) == Rational(5, 2));
    CHECK(rational_from_double(2.25) == Rational(9, 4));
    CHECK(rational_from_double(0.0) == Rational(0));
}

TEST_CASE("criterion params at the endpoint q = 3") {
    const auto p = criterion_params_from_q(3.0);
    CHECK(p.q == 3.0);
    CHECK(p.p == 1.0);
    CHECK(p.alpha == 2.5);
    CHECK(p.beta == 0.5);
    CHECK(p.s == 0.5);
    // 1/a = 5/18 - 1/9 = 1/6 and 1/b = 13/18 - 2/9 = 1/2: the boundary values
    // of the open Hoelder ranges, i.e. the dedicated L^3 L^6 L^2 chain.
    CHECK(p.a == 6.0);
    CHECK(p.b == 2.0);
    CHECK(std::isinf(p.r));
    CHECK_FALSE(p.ab_interior);
}

TEST_CASE("criterion params at q = 2 reproduce the L^2 exponents") {
    const auto p = criterion_params_from_q(2.0);
    CHECK(p.p == Catch::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(p.alpha == 2.0);
    CHECK(p.beta == 0.0);
    CHECK(p.s == 0.0);
    CHECK(p.a == 9.0);
    CHECK(p.b == Catch::Approx(18.0 / 7.0).epsilon(1e-15));
    CHECK(p.r == 4.0);
    CHECK(p.ab_interior);
}

TEST_CASE("criterion params from alpha") {
    const auto p = criterion_params_from_alpha(2.5);
    CHECK(p.q == 3.0);
    CHECK(p.p == 1.0);

    const auto p2 = criterion_params_from_alpha(2.25);
    CHECK(p2.q == Catch::Approx(2.4).epsilon(1e-15));
    CHECK(p2.p == Catch::Approx(8.0 / 7.0).epsilon(1e-15));

    const auto p3 = criterion_params_from_alpha(2.0);
    CHECK(p3.q == 2.0);
}

TEST_CASE("exponent identities hold in floating point across the range") {
    for (double q : {1.21, 1.5, 2.0, 2.4, 2.75, 3.0}) {
        const auto p = criterion_params_from_q(q);
        CHECK(2.0 / p.p + 3.0 / p.q == Catch::Approx(3.0).epsilon(1e-14));
        CHECK(1.0 / p.a + 1.0 / p.b + 1.0 / p.q == Catch::Approx(1.0).epsilon(1e-14));
        CHECK(p.alpha == Catch::Approx(0.5 + 2.0 / p.p).epsilon(1e-14));
        if (std::isfinite(p.r)) {
            CHECK(1.0 / p.p + 1.0 / p.r == Catch::Approx(1.0).epsilon(1e-14));
            CHECK(2.0 / p.r == Catch::Approx(3.0 / p.q - 1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("out-of-range exponent selections are rejected") {
    CHECK_THROWS_AS(criterion_params_from_q(1.2), OutOfRangeError);   // q = 6/5 exactly
    CHECK_THROWS_AS(criterion_params_from_q(1.1), OutOfRangeError);
    CHECK_THROWS_AS(criterion_params_from_q(3.0000001), OutOfRangeError);
    CHECK_THROWS_AS(criterion_params_from_alpha(1.99), OutOfRangeError);
    CHECK_THROWS_AS(criterion_params_from_alpha(2.51), OutOfRangeError);
}

TEST_CASE("sharp Sobolev constant: endpoints, frozen values, monotonicity") {
    // s -> 0+ limit is 1
    CHECK(std::abs(sharp_sobolev_constant(1e-8) - 1.0) <= 1e-6);

    // exact-Gamma arithmetic: Gamma(1/2) = sqrt(pi), Gamma(5/2) = 3 sqrt(pi)/4
    // gives C_1 = 2^{-1/3} pi^{-4/3} 2/sqrt(3)
    const double c1_oracle =
        std::pow(2.0, -1.0 / 3.0) * std::pow(kPi, -4.0 / 3.0) * 2.0 / std::sqrt(3.0);
    CHECK(c1_oracle == Catch::Approx(0.19918633443344454).epsilon(1e-14));
    CHECK(sharp_sobolev_constant(1.0) == Catch::Approx(c1_oracle).epsilon(1e-12));

    // Gamma(1) = Gamma(2) = 1 gives C_{1/2} = 2^{-1/6} pi^{-2/3}
    const double c05_oracle = std::pow(2.0, -1.0 / 6.0) * std::pow(kPi, -2.0 / 3.0);
    CHECK(c05_oracle == Catch::Approx(0.41533170563546680).epsilon(1e-14));
    CHECK(sharp_sobolev_constant(0.5) == Catch::Approx(c05_oracle).epsilon(1e-12));

    CHECK_THROWS_AS(sharp_sobolev_constant(0.0), OutOfRangeError);
    CHECK_THROWS_AS(sharp_sobolev_constant(1.5), OutOfRangeError);
    CHECK_THROWS_AS(sharp_sobolev_constant(-0.2), OutOfRangeError);

    // strictly decreasing up to s ~ 1.2; past that the Gamma(3/2-s) pole takes
    // over and the constant blows up toward the endpoint of the embedding range
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const double s = 0.01 + (1.2 - 0.01) * i / 99.0;
        const double c = sharp_sobolev_constant(s);
        CHECK(c < prev);
        prev = c;
    }
    CHECK(sharp_sobolev_constant(1.49) > sharp_sobolev_constant(1.3));
}
