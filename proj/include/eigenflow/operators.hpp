#pragma once

#include <array>
#include <cmath>

#include "eigenflow/field.hpp"
#include "eigenflow/grid.hpp"

namespace eigenflow {

// Projection onto divergence-free fields: u_hat -> u_hat - k (k.u_hat)/|k|^2.
// The mean mode passes through unchanged (it is zero for valid fields).
inline SpectralVectorField leray_project(const SpectralVectorField& u) {
    const Grid& g = u.grid();
    SpectralVectorField out = u;
    const std::size_t nn = g.size();
    for (std::size_t i = 1; i < nn; ++i) {
        const auto k = g.wavenumber(i);
        const double k2 = static_cast<double>(Grid::ksq(k));
        if (k2 == 0.0) continue;
        const Complex dot = static_cast<double>(k[0]) * u.at(0, i) +
                            static_cast<double>(k[1]) * u.at(1, i) +
                            static_cast<double>(k[2]) * u.at(2, i);
        const Complex f = dot / k2;
        for (int c = 0; c < 3; ++c) out.at(c, i) -= static_cast<double>(k[c]) * f;
    }
    return out;
}

// (-Laplacian - lambda) u: per-mode multiplier ((2*pi*|k|/L)^2 - lambda).
inline SpectralVectorField shifted_laplacian(const SpectralVectorField& u, double lambda) {
    const Grid& g = u.grid();
    SpectralVectorField out = u;
    const double fs2 = g.frequency_scale() * g.frequency_scale();
    const std::size_t nn = g.size();
    for (std::size_t i = 0; i < nn; ++i) {
        const double w2 = fs2 * Grid::ksq(g.wavenumber(i));
        const double mult = w2 - lambda;
        for (int c = 0; c < 3; ++c) out.at(c, i) *= mult;
    }
    return out;
}

inline SpectralVectorField neg_laplacian(const SpectralVectorField& u) {
    return shifted_laplacian(u, 0.0);
}

// 2/3-rule mask: zero every mode with any |k_j| > n/3.
inline bool dealias_keep(const Grid& g, const std::array<int, 3>& k) {
    const int n = g.n;
    return 3 * std::abs(k[0]) <= n && 3 * std::abs(k[1]) <= n && 3 * std::abs(k[2]) <= n;
}

inline void dealias(SpectralVectorField& u) {
    const Grid& g = u.grid();
    const std::size_t nn = g.size();
    for (std::size_t i = 0; i < nn; ++i) {
        if (!dealias_keep(g, g.wavenumber(i)))
            for (int c = 0; c < 3; ++c) u.at(c, i) = Complex(0.0, 0.0);
    }
}

inline SpectralVectorField dealiased(SpectralVectorField u) {
    dealias(u);
    return u;
}

// Integer torus rescaling u^lam(x) = lam * u(lam * x): mode k of the source
// lands on mode lam*k of the target with coefficient scaled by lam. The
// target grid must be able to hold every scaled mode.
inline SpectralVectorField integer_rescale(const SpectralVectorField& u, int lam,
                                           const Grid& target) {
    if (lam < 1) throw OutOfRangeError("integer_rescale: lambda must be a positive integer");
    if (target.box_length != u.grid().box_length)
        throw OutOfRangeError("integer_rescale: source and target boxes must match");
    SpectralVectorField out(target);
    const Grid& g = u.grid();
    const std::size_t nn = g.size();
    for (std::size_t i = 0; i < nn; ++i) {
        const auto k = g.wavenumber(i);
        const std::array<int, 3> ks = {lam * k[0], lam * k[1], lam * k[2]};
        bool representable = true;
        for (int c = 0; c < 3; ++c)
            if (ks[c] < -target.n / 2 || ks[c] > target.n / 2 - 1) representable = false;
        if (!representable) {
            if (u.at(0, i) != Complex(0, 0) || u.at(1, i) != Complex(0, 0) ||
                u.at(2, i) != Complex(0, 0))
                throw OutOfRangeError("integer_rescale: scaled mode leaves the target lattice");
            continue;
        }
        const std::size_t j = target.index_of(ks);
        for (int c = 0; c < 3; ++c) out.at(c, j) = static_cast<double>(lam) * u.at(c, i);
    }
    out.zero_mean();
    return out;
}

}  // namespace eigenflow
