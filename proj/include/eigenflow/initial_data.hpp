#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eigenflow/criteria.hpp"
#include "eigenflow/field.hpp"
#include "eigenflow/norms.hpp"
#include "eigenflow/operators.hpp"

namespace eigenflow {

struct InitialDataSpec {
    enum class Kind { taylor_green, abc, random_band, single_mode, from_file };
    Kind kind = Kind::taylor_green;
    double amplitude = 1.0;          // taylor_green / single_mode scale, random_band L^2 norm
    double band_r1 = 0.0;            // random_band inner radius, |k|/L units
    double band_r2 = 0.0;            // random_band outer radius
    double spectral_slope = -5.0 / 3.0;
    std::uint64_t seed = 0;
    std::array<int, 3> k0 = {1, 0, 0};             // single_mode wavevector
    std::array<double, 3> polarization = {0, 1, 0}; // single_mode direction
    std::array<double, 3> abc = {1.0, 1.0, 1.0};
    std::string file;  // from_file checkpoint path

    static Kind kind_from_name(const std::string& name) {
        if (name == "taylor_green") return Kind::taylor_green;
        if (name == "abc") return Kind::abc;
        if (name == "random_band") return Kind::random_band;
        if (name == "single_mode") return Kind::single_mode;
        if (name == "from_file") return Kind::from_file;
        throw OutOfRangeError("unknown initial data kind '" + name + "'");
    }

    static const char* kind_name(Kind k) {
        switch (k) {
            case Kind::taylor_green: return "taylor_green";
            case Kind::abc: return "abc";
            case Kind::random_band: return "random_band";
            case Kind::single_mode: return "single_mode";
            case Kind::from_file: return "from_file";
        }
        return "?";
    }
};

// u = A (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0) with x~ = 2 pi x / L.
// Built directly in coefficient space: eight modes on the shell |k|^2 = 3,
// an exact Laplacian eigenfunction with eigenvalue 12 pi^2 / L^2.
inline SpectralVectorField taylor_green(const Grid& grid, double amplitude) {
    SpectralVectorField u(grid);
    const Complex i_unit(0.0, 1.0);
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                const std::array<int, 3> k = {sx, sy, sz};
                const std::size_t idx = grid.index_of(k);
                u.at(0, idx) = -i_unit * (amplitude * sx / 8.0);
                u.at(1, idx) = i_unit * (amplitude * sy / 8.0);
            }
    return u;
}

// Beltrami benchmark on the shell |k| = 1:
// u = (A sin x3 + C cos x2, B sin x1 + A cos x3, C sin x2 + B cos x1).
inline SpectralVectorField abc_flow(const Grid& grid, double a, double b, double c) {
    SpectralVectorField u(grid);
    const Complex half(0.5, 0.0);
    const Complex ihalf(0.0, 0.5);
    auto put = [&](int comp, std::array<int, 3> k, Complex v) {
        u.at(comp, grid.index_of(k)) += v;
    };
    // A sin x3 e1 + A cos x3 e2
    put(0, {0, 0, 1}, -ihalf * a);
    put(0, {0, 0, -1}, ihalf * a);
    put(1, {0, 0, 1}, half * a);
    put(1, {0, 0, -1}, half * a);
    // B sin x1 e2 + B cos x1 e3
    put(1, {1, 0, 0}, -ihalf * b);
    put(1, {-1, 0, 0}, ihalf * b);
    put(2, {1, 0, 0}, half * b);
    put(2, {-1, 0, 0}, half * b);
    // C sin x2 e3 + C cos x2 e1
    put(2, {0, 1, 0}, -ihalf * c);
    put(2, {0, -1, 0}, ihalf * c);
    put(0, {0, 1, 0}, half * c);
    put(0, {0, -1, 0}, half * c);
    return u;
}

// amplitude * sin(2 pi k0.x / L) * polarization; requires k0 . polarization = 0.
inline SpectralVectorField single_mode(const Grid& grid, const std::array<int, 3>& k0,
                                       const std::array<double, 3>& polarization,
                                       double amplitude = 1.0) {
    const double dot = k0[0] * polarization[0] + k0[1] * polarization[1] + k0[2] * polarization[2];
    const double kn = std::sqrt(static_cast<double>(Grid::ksq(k0)));
    const double pn = std::sqrt(polarization[0] * polarization[0] +
                                polarization[1] * polarization[1] +
                                polarization[2] * polarization[2]);
    if (kn == 0.0 || pn == 0.0)
        throw OutOfRangeError("single_mode: wavevector and polarization must be nonzero");
    if (std::abs(dot) > 1e-12 * kn * pn)
        throw NotTransverseError("single_mode: polarization is not transverse to k0");
    SpectralVectorField u(grid);
    const std::array<int, 3> kneg = {-k0[0], -k0[1], -k0[2]};
    const std::size_t ip = grid.index_of(k0);
    const std::size_t im = grid.index_of(kneg);
    for (int c = 0; c < 3; ++c) {
        const Complex v(0.0, -0.5 * amplitude * polarization[c]);
        u.at(c, ip) = v;
        u.at(c, im) = std::conj(v);
    }
    return u;
}

namespace detail {

// Deterministic standard normals: Box-Muller over mt19937_64 uniforms, so the
// stream is identical across standard library implementations.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare_ = rad * std::sin(2.0 * kPi * u2);
        have_ = true;
        return rad * std::cos(2.0 * kPi * u2);
    }

  private:
    double uniform() {
        // 53-bit mantissa in [0,1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_ = false;
};

}  // namespace detail

// Divergence-free random field supported on the annulus r1 <= |k|/L <= r2,
// shell energy proportional to |k|^slope, rescaled to the requested L^2 norm.
// Coefficients are drawn on canonical half-lattice representatives and
// mirrored, so a seed fixes the field bit for bit.
inline SpectralVectorField random_band(const Grid& grid, double r1, double r2, double slope,
                                       double amplitude, std::uint64_t seed) {
    if (!(r1 > 0.0) || !(r1 <= r2))
        throw OutOfRangeError("random_band: need 0 < r1 <= r2");
    if (r2 > grid.n / (3.0 * grid.box_length) + 1e-12)
        throw OutOfRangeError("random_band: r2 must satisfy r2 <= n/(3L)");
    const double L = grid.box_length;
    const double lo = r1 * r1 * L * L;  // bounds on |k|^2
    const double hi = r2 * r2 * L * L;

    // shell occupancy, for per-mode variances
    std::vector<int> shell_count(static_cast<std::size_t>(grid.max_ksq()) + 1, 0);
    const std::size_t nn = grid.size();
    std::size_t in_band = 0;
    for (std::size_t i = 0; i < nn; ++i) {
        const int m = Grid::ksq(grid.wavenumber(i));
        if (m >= lo - 1e-9 && m <= hi + 1e-9 && m > 0) {
            ++shell_count[m];
            ++in_band;
        }
    }
    if (in_band == 0) throw EmptyBandError("random_band: no lattice modes in [r1, r2]");

    auto canonical = [](const std::array<int, 3>& k) {
        if (k[2] != 0) return k[2] > 0;
        if (k[1] != 0) return k[1] > 0;
        return k[0] > 0;
    };

    detail::GaussianStream gauss(seed);
    SpectralVectorField u(grid);
    for (std::size_t i = 0; i < nn; ++i) {
        const auto k = grid.wavenumber(i);
        const int m = Grid::ksq(k);
        if (m == 0 || m < lo - 1e-9 || m > hi + 1e-9) continue;
        if (!canonical(k)) continue;
        const double knorm = std::sqrt(static_cast<double>(m)) / L;
        const double sigma = std::sqrt(std::pow(knorm, slope) / shell_count[m]);
        const std::size_t jc = grid.conjugate_index(i);
        for (int c = 0; c < 3; ++c) {
            const Complex z(sigma * gauss.next(), sigma * gauss.next());
            u.at(c, i) = z;
            u.at(c, jc) = std::conj(z);
        }
    }
    u = leray_project(u);
    u.zero_mean();
    const double norm = hs_norm(u, 0.0);
    if (norm == 0.0) throw EmptyBandError("random_band: projection annihilated the band");
    u *= amplitude / norm;
    return u;
}

}  // namespace eigenflow
