#include <catch2/catch_amalgamated.hpp>

#include "eigenflow/fft.hpp"
#include "eigenflow/field.hpp"
#include "eigenflow/grid.hpp"
#include "oracles.hpp"

using namespace eigenflow;

TEST_CASE("grid validates size and reproduces FFT ordering") {
    CHECK_THROWS_AS(Grid(7), OutOfRangeError);
    CHECK_THROWS_AS(Grid(6), OutOfRangeError);
    CHECK_THROWS_AS(Grid(16, -1.0), OutOfRangeError);

    const Grid g(16, 2.0);
    // axis ordering 0,1,...,7,-8,...,-1
    CHECK(g.axis_wavenumber(0) == 0);
    CHECK(g.axis_wavenumber(7) == 7);
    CHECK(g.axis_wavenumber(8) == -8);
    CHECK(g.axis_wavenumber(15) == -1);

    for (std::size_t i : {std::size_t(0), std::size_t(1), std::size_t(4095), std::size_t(2049)}) {
        const auto k = g.wavenumber(i);
        CHECK(g.index_of(k) == i);
    }
    // conjugate pairing is an involution and negates wavenumbers
    for (std::size_t i = 0; i < g.size(); i += 97) {
        const auto k = g.wavenumber(i);
        const auto kc = g.wavenumber(g.conjugate_index(i));
        for (int c = 0; c < 3; ++c) {
            const int expected = (k[c] == -8) ? -8 : -k[c];  // Nyquist is self-paired
            CHECK(kc[c] == expected);
        }
        CHECK(g.conjugate_index(g.conjugate_index(i)) == i);
    }
}

TEST_CASE("make_field: zero map gives zero field with invariants") {
    const Grid g(8);
    auto u = make_field(g, [](const std::array<int, 3>&) {
        return std::array<Complex, 3>{Complex(0, 0), Complex(0, 0), Complex(0, 0)};
    });
    CHECK(u.is_zero());
    CHECK(u.hermitian_asymmetry() == 0.0);
    CHECK(u.divergence_ratio() == 0.0);
}

TEST_CASE("make_field symmetrizes a single populated mode") {
    const Grid g(8);
    const std::array<int, 3> k0 = {1, 2, 0};
    const Complex v(0.3, -0.7);
    auto u = make_field(g, [&](const std::array<int, 3>& k) {
        std::array<Complex, 3> out{Complex(0, 0), Complex(0, 0), Complex(0, 0)};
        if (k == k0) out[1] = v;
        return out;
    });
    // pair averaging splits the value between k0 and -k0
    const std::size_t ip = g.index_of(k0);
    const std::size_t im = g.conjugate_index(ip);
    CHECK(u.at(1, ip) == 0.5 * v);
    CHECK(u.at(1, im) == std::conj(0.5 * v));
    CHECK(u.hermitian_asymmetry() < 1e-15);

    // physical samples are real up to rounding
    const auto phys = component_to_physical_complex(u, 1);
    double max_im = 0.0, max_abs = 0.0;
    for (const auto& z : phys) {
        max_im = std::max(max_im, std::abs(z.imag()));
        max_abs = std::max(max_abs, std::abs(z));
    }
    CHECK(max_im <= 1e-12 * max_abs);
}

TEST_CASE("make_field rejects non-finite coefficients") {
    const Grid g(8);
    CHECK_THROWS_AS(make_field(g,
                               [](const std::array<int, 3>& k) {
                                   std::array<Complex, 3> out{};
                                   if (k[0] == 1 && k[1] == 0 && k[2] == 0)
                                       out[0] = Complex(std::nan(""), 0.0);
                                   return out;
                               }),
                    OutOfRangeError);
}

TEST_CASE("random field: inverse transform is real, round trip is exact") {
    const Grid g(16);
    const auto u = oracles::random_field(g, 7);

    double max_im = 0.0, max_abs = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto phys = component_to_physical_complex(u, c);
        for (const auto& z : phys) {
            max_im = std::max(max_im, std::abs(z.imag()));
            max_abs = std::max(max_abs, std::abs(z));
        }
    }
    CHECK(max_im <= 1e-12 * max_abs);

    // forward(inverse(u)) reproduces coefficients to 1e-12 relative
    const auto back = to_spectral(to_physical(u));
    double worst = 0.0, scale = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.size(); ++i) {
            worst = std::max(worst, std::abs(back.at(c, i) - u.at(c, i)));
            scale = std::max(scale, std::abs(u.at(c, i)));
        }
    CHECK(worst <= 1e-12 * scale);
}

TEST_CASE("divergence ratio flags non-solenoidal fields") {
    const Grid g(8);
    // pure gradient field: u_hat(k) = i k c(k)
    auto grad = make_field(g, [&](const std::array<int, 3>& k) {
        std::array<Complex, 3> out{};
        if (Grid::ksq(k) > 0 && Grid::ksq(k) < 9) {
            const Complex c(0.2, 0.1);
            for (int j = 0; j < 3; ++j) out[j] = Complex(0, 1) * static_cast<double>(k[j]) * c;
        }
        return out;
    });
    CHECK(grad.divergence_ratio() > 0.5);
    const auto sol = oracles::random_field(g, 3);
    CHECK(sol.divergence_ratio() <= 1e-12);
}
