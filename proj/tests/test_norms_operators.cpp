#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "eigenflow/criteria.hpp"
#include "eigenflow/initial_data.hpp"
#include "eigenflow/norms.hpp"
#include "eigenflow/operators.hpp"
#include "oracles.hpp"

using namespace eigenflow;

namespace {
constexpr double kTwoPi = 2.0 * kPi;
}

TEST_CASE("hs_norm: zero field, argument checking") {
    const Grid g(8);
    const SpectralVectorField zero(g);
    for (double a : {0.0, 1.0, 2.5}) CHECK(hs_norm(zero, a) == 0.0);
    const auto u = oracles::random_field(g, 1);
    CHECK_THROWS_AS(hs_norm(u, std::nan("")), OutOfRangeError);
    CHECK_THROWS_AS(hs_norm(u, -0.5), OutOfRangeError);
}

TEST_CASE("hs_norm on the sine eigenfunction scales as (2 pi)^alpha") {
    // f = sin(2 pi x1) e2 on the unit box; ||f||_{L^2}^2 = 1/2, and each
    // derivative order contributes one factor 2 pi (hand mode-sum oracle:
    // two modes, |u_hat| = 1/2 each).
    const Grid g(16);
    const auto f = single_mode(g, {1, 0, 0}, {0.0, 1.0, 0.0});
    const double l2 = hs_norm(f, 0.0);
    CHECK(l2 == Catch::Approx(std::sqrt(0.5)).epsilon(1e-13));
    for (double a : {0.0, 1.0, 2.0}) {
        CHECK(hs_norm(f, a) ==
              Catch::Approx(std::pow(kTwoPi, a) * l2).epsilon(1e-12));
    }
}

TEST_CASE("hs_norm matches the direct mode-sum oracle") {
    for (int n : {8, 16}) {
        const Grid g(n, n == 8 ? 1.0 : 2.5);
        const auto u = oracles::random_field(g, 11 + n);
        for (double a : {0.0, 0.75, 1.0, 2.0, 2.5}) {
            const double lib = hs_norm(u, a);
            const double ref = oracles::direct_hs_norm(u, a);
            CHECK(lib == Catch::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("lq_norm: basics and Plancherel at q = 2") {
    const Grid g(16);
    const SpectralVectorField zero(g);
    CHECK(lq_norm(zero, 2.0) == 0.0);
    CHECK_THROWS_AS(lq_norm(zero, 1.0), OutOfRangeError);
    CHECK_THROWS_AS(lq_norm(zero, 0.5), OutOfRangeError);

    const auto u = oracles::random_field(g, 21);
    CHECK(lq_norm(u, 2.0) == Catch::Approx(hs_norm(u, 0.0)).epsilon(1e-10));
}

TEST_CASE("lq_norm of a constant-magnitude field is c L^{3/q}") {
    // u = c (cos k.x, sin k.x, 0) has |u(x)| = c everywhere
    const double L = 1.75;
    const Grid g(16, L);
    const double c = 0.8;
    SpectralVectorField u(g);
    const std::size_t ip = g.index_of({0, 0, 2});
    const std::size_t im = g.conjugate_index(ip);
    u.at(0, ip) = Complex(0.5 * c, 0.0);
    u.at(0, im) = Complex(0.5 * c, 0.0);
    u.at(1, ip) = Complex(0.0, -0.5 * c);
    u.at(1, im) = Complex(0.0, 0.5 * c);
    for (double q : {1.5, 2.0, 3.0, 6.0})
        CHECK(lq_norm(u, q) == Catch::Approx(c * std::pow(L, 3.0 / q)).epsilon(1e-12));
}

TEST_CASE("gradient L^q norm agrees with hs_norm at q = 2") {
    const Grid g(16, 1.25);
    const auto u = oracles::random_field(g, 31);
    CHECK(lq_norm_gradient(u, 2.0) == Catch::Approx(hs_norm(u, 1.0)).epsilon(1e-11));
}

TEST_CASE("leray projection annihilates gradients and is idempotent") {
    const Grid g(16);
    auto grad = make_field(g, [&](const std::array<int, 3>& k) {
        std::array<Complex, 3> out{};
        const int m = Grid::ksq(k);
        if (m > 0 && m < 20) {
            const Complex c(0.3 / (1.0 + m), -0.1);
            for (int j = 0; j < 3; ++j) out[j] = static_cast<double>(k[j]) * c;
        }
        return out;
    });
    const auto pg = leray_project(grad);
    double mx = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) mx = std::max(mx, std::abs(pg.at(c, i)));
    CHECK(mx <= 1e-14);

    const auto u = oracles::random_field(g, 5, /*project=*/false);
    const auto p1 = leray_project(u);
    const auto p2 = leray_project(p1);
    CHECK(p1.divergence_ratio() <= 1e-12);
    double diff = 0.0, scale = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) {
            diff = std::max(diff, std::abs(p2.at(c, i) - p1.at(c, i)));
            scale = std::max(scale, std::abs(p1.at(c, i)));
        }
    CHECK(diff <= 1e-14 * scale);

    // projecting an already divergence-free field is the identity
    const auto v = oracles::random_field(g, 6);
    const auto pv = leray_project(v);
    double d2 = 0.0, s2 = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) {
            d2 = std::max(d2, std::abs(pv.at(c, i) - v.at(c, i)));
            s2 = std::max(s2, std::abs(v.at(c, i)));
        }
    CHECK(d2 <= 1e-14 * s2);
}

TEST_CASE("leray projection is self-adjoint") {
    const Grid g(16);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto u = oracles::random_field(g, 100 + seed, false);
        const auto v = oracles::random_field(g, 200 + seed, false);
        const double a = l2_inner(leray_project(u), v);
        const double b = l2_inner(u, leray_project(v));
        CHECK(a == Catch::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("shifted laplacian: eigenfunction annihilation and linearity") {
    const Grid g(16);
    const auto f = single_mode(g, {1, 0, 0}, {0.0, 1.0, 0.0});
    // -Lap f = 4 pi^2 f, so the shift by 4 pi^2 kills it
    const auto shifted = shifted_laplacian(f, 4.0 * kPi * kPi);
    CHECK(hs_norm(shifted, 0.0) <= 1e-12 * hs_norm(f, 0.0));

    const auto u = oracles::random_field(g, 44);
    CHECK(hs_norm(neg_laplacian(u), 0.0) == Catch::Approx(hs_norm(u, 2.0)).epsilon(1e-13));

    // shifted(u, 5) == -Lap u - 5 u by separate calls
    auto direct = neg_laplacian(u);
    auto scaled = u;
    scaled *= 5.0;
    direct -= scaled;
    const auto combined = shifted_laplacian(u, 5.0);
    double diff = 0.0, scale = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) {
            diff = std::max(diff, std::abs(combined.at(c, i) - direct.at(c, i)));
            scale = std::max(scale, std::abs(direct.at(c, i)));
        }
    CHECK(diff <= 1e-14 * scale);
}

TEST_CASE("interpolation inequality holds on random fields") {
    for (int n : {8, 16}) {
        const Grid g(n);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto u = oracles::random_field(g, 1000 + seed);
            for (double alpha : {2.0, 2.25, 2.5}) {
                const double lhs = std::pow(hs_norm(u, alpha - 1.0), 2);
                const double rhs = hs_norm(u, alpha - 2.0) * hs_norm(u, alpha);
                CHECK(lhs <= rhs * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("Plancherel holds across grid sizes") {
    for (int n : {8, 16, 32}) {
        const Grid g(n);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto u = oracles::random_field(g, 300 + seed + n);
            const double a = lq_norm(u, 2.0);
            const double b = hs_norm(u, 0.0);
            CHECK(std::abs(a - b) <= 1e-10 * b);
        }
    }
}

TEST_CASE("fields are safe to share read-only across threads") {
    // norms, transforms, and criteria on a shared field from four threads;
    // every thread must reproduce the single-threaded values exactly
    const Grid g(16);
    const auto u = oracles::random_field(g, 777);
    const double ref_hs = hs_norm(u, 1.5);
    const double ref_lq = lq_norm(u, 3.0);
    const double ref_inf = inf_lambda_l2(u).value;

    std::array<std::array<double, 3>, 4> got{};
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            got[t][0] = hs_norm(u, 1.5);
            got[t][1] = lq_norm(u, 3.0);
            got[t][2] = inf_lambda_l2(u).value;
        });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t) {
        CHECK(got[t][0] == ref_hs);
        CHECK(got[t][1] == ref_lq);
        CHECK(got[t][2] == ref_inf);
    }
}

TEST_CASE("mutation sensitivity: a sign-flipped projection multiplier is caught") {
    const Grid g(16);
    const auto u = oracles::random_field(g, 404, /*project=*/false);
    // correct projection passes the divergence invariant
    CHECK(leray_project(u).divergence_ratio() <= 1e-12);

    // corrupted variant u_hat + k (k.u_hat)/|k|^2 amplifies the longitudinal part
    SpectralVectorField broken = u;
    for (std::size_t i = 1; i < g.size(); ++i) {
        const auto k = g.wavenumber(i);
        const double k2 = static_cast<double>(Grid::ksq(k));
        if (k2 == 0.0) continue;
        const Complex dot = static_cast<double>(k[0]) * u.at(0, i) +
                            static_cast<double>(k[1]) * u.at(1, i) +
                            static_cast<double>(k[2]) * u.at(2, i);
        for (int c = 0; c < 3; ++c) broken.at(c, i) += static_cast<double>(k[c]) * dot / k2;
    }
    CHECK(broken.divergence_ratio() > 1e-3);
}

TEST_CASE("integer rescaling covariance of hs_norm") {
    const Grid src(16);
    const Grid dst(32);
    const auto u = random_band(src, 1.0, 4.0, -5.0 / 3.0, 1.0, 9);
    const auto u2 = integer_rescale(u, 2, dst);
    for (double a : {0.0, 1.0, 2.0}) {
        const double expected = std::pow(2.0, 1.0 + a) * hs_norm(u, a);
        CHECK(hs_norm(u2, a) == Catch::Approx(expected).epsilon(1e-10));
    }
    // rescaled field keeps the invariants
    CHECK(u2.hermitian_asymmetry() <= 1e-13);
    CHECK(u2.divergence_ratio() <= 1e-12);
}
