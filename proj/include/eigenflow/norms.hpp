#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "eigenflow/fft.hpp"
#include "eigenflow/field.hpp"

namespace eigenflow {

// Energy per integer shell |k|^2 = m, including the L^3 Plancherel factor:
// shell(m) = L^3 * sum_{|k|^2=m} |u_hat(k)|^2. Entries with zero energy are
// dropped; the list is sorted by m.
struct ShellSpectrum {
    double frequency_scale = 0.0;  // 2*pi/L
    std::vector<std::pair<int, double>> shells;
};

inline ShellSpectrum shell_energies(const SpectralVectorField& u) {
    const Grid& g = u.grid();
    std::vector<double> acc(static_cast<std::size_t>(g.max_ksq()) + 1, 0.0);
    const int n = g.n;
    const double vol = g.box_length * g.box_length * g.box_length;
    std::size_t i = 0;
    for (int ax = 0; ax < n; ++ax) {
        const int kx = g.axis_wavenumber(ax);
        for (int ay = 0; ay < n; ++ay) {
            const int ky = g.axis_wavenumber(ay);
            for (int az = 0; az < n; ++az, ++i) {
                const int kz = g.axis_wavenumber(az);
                const int m = kx * kx + ky * ky + kz * kz;
                acc[m] += std::norm(u.at(0, i)) + std::norm(u.at(1, i)) + std::norm(u.at(2, i));
            }
        }
    }
    ShellSpectrum s;
    s.frequency_scale = g.frequency_scale();
    for (std::size_t m = 0; m < acc.size(); ++m)
        if (acc[m] > 0.0) s.shells.emplace_back(static_cast<int>(m), acc[m] * vol);
    return s;
}

// Homogeneous Sobolev norm of order alpha >= 0:
//   ||u||_{H^alpha}^2 = L^3 sum_k (2*pi*|k|/L)^(2*alpha) |u_hat(k)|^2.
// The L^3 factor makes alpha = 0 the physical L^2 norm (discrete Plancherel).
inline double hs_norm(const SpectralVectorField& u, double alpha) {
    if (!std::isfinite(alpha)) throw OutOfRangeError("hs_norm: alpha must be finite");
    if (alpha < 0.0) throw OutOfRangeError("hs_norm: negative orders are not supported");
    const ShellSpectrum s = shell_energies(u);
    const double w2 = s.frequency_scale * s.frequency_scale;
    double sum = 0.0;
    for (const auto& [m, e] : s.shells) {
        if (m == 0) continue;  // mean-free fields carry nothing here anyway
        sum += std::pow(w2 * m, alpha) * e;
    }
    return std::sqrt(sum);
}

// L^2 inner product <u,v> = L^3 Re sum_k conj(u_hat).v_hat.
inline double l2_inner(const SpectralVectorField& u, const SpectralVectorField& v) {
    const double vol = std::pow(u.grid().box_length, 3);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& a = u.component(c);
        const auto& b = v.component(c);
        for (std::size_t i = 0; i < a.size(); ++i)
            sum += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
    return sum * vol;
}

// Equal-weight collocation quadrature of |u(x)|^q over the box, q-th root.
// |u(x)| is the pointwise Euclidean magnitude.
inline double lq_norm(const SpectralVectorField& u, double q) {
    if (!(q > 1.0) || !std::isfinite(q)) throw OutOfRangeError("lq_norm: q must be in (1,inf)");
    const PhysicalVectorField p = to_physical(u);
    const double h = u.grid().spacing();
    const double w = h * h * h;
    double sum = 0.0;
    for (std::size_t i = 0; i < p.comp[0].size(); ++i)
        sum += std::pow(p.magnitude(i), q) * w;
    return std::pow(sum, 1.0 / q);
}

inline double lq_norm(const PhysicalVectorField& p, double q) {
    if (!(q > 1.0) || !std::isfinite(q)) throw OutOfRangeError("lq_norm: q must be in (1,inf)");
    const double h = p.grid.spacing();
    const double w = h * h * h;
    double sum = 0.0;
    for (std::size_t i = 0; i < p.comp[0].size(); ++i)
        sum += std::pow(p.magnitude(i), q) * w;
    return std::pow(sum, 1.0 / q);
}

// Collocation samples of all nine derivatives d_m u_j, Frobenius magnitude per
// point. Used for L^q norms of the gradient.
inline std::vector<double> gradient_frobenius_samples(const SpectralVectorField& u) {
    const Grid& g = u.grid();
    const std::size_t nn = g.size();
    std::vector<double> frob2(nn, 0.0);
    std::vector<Complex> spec(nn), phys(nn);
    const double fs = g.frequency_scale();
    for (int j = 0; j < 3; ++j) {
        for (int m = 0; m < 3; ++m) {
            std::size_t i = 0;
            for (int ax = 0; ax < g.n; ++ax)
                for (int ay = 0; ay < g.n; ++ay)
                    for (int az = 0; az < g.n; ++az, ++i) {
                        const std::array<int, 3> k = {g.axis_wavenumber(ax), g.axis_wavenumber(ay),
                                                      g.axis_wavenumber(az)};
                        spec[i] = Complex(0.0, fs * k[m]) * u.at(j, i);
                    }
            Fft::spectral_to_physical(g, spec.data(), phys.data());
            for (std::size_t x = 0; x < nn; ++x) frob2[x] += phys[x].real() * phys[x].real();
        }
    }
    for (double& v : frob2) v = std::sqrt(v);
    return frob2;
}

// ||grad u||_{L^q} with the pointwise Frobenius magnitude; q = 2 agrees with
// hs_norm(u, 1) by Plancherel.
inline double lq_norm_gradient(const SpectralVectorField& u, double q) {
    if (!(q > 1.0) || !std::isfinite(q)) throw OutOfRangeError("lq_norm_gradient: q must be in (1,inf)");
    const auto frob = gradient_frobenius_samples(u);
    const double h = u.grid().spacing();
    const double w = h * h * h;
    double sum = 0.0;
    for (double v : frob) sum += std::pow(v, q) * w;
    return std::pow(sum, 1.0 / q);
}

}  // namespace eigenflow
