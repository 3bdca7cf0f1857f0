#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "eigenflow/errors.hpp"
#include "eigenflow/grid.hpp"

namespace eigenflow {

using Complex = std::complex<double>;

// Three-component velocity field stored as full complex Fourier coefficients
// u_hat_j(k) on the n^3 lattice, u(x) = sum_k u_hat(k) exp(2*pi*i k.x/L).
// Valid fields are Hermitian-symmetric (real in physical space) and mean-free.
class SpectralVectorField {
  public:
    SpectralVectorField() = default;

    explicit SpectralVectorField(const Grid& grid)
        : grid_(grid) {
        for (auto& c : coeffs_) c.assign(grid_.size(), Complex(0.0, 0.0));
    }

    const Grid& grid() const { return grid_; }

    const std::vector<Complex>& component(int j) const { return coeffs_[j]; }
    std::vector<Complex>& component(int j) { return coeffs_[j]; }

    Complex at(int j, std::size_t flat) const { return coeffs_[j][flat]; }
    Complex& at(int j, std::size_t flat) { return coeffs_[j][flat]; }

    std::array<Complex, 3> mode(std::size_t flat) const {
        return {coeffs_[0][flat], coeffs_[1][flat], coeffs_[2][flat]};
    }

    void set_mode(std::size_t flat, const std::array<Complex, 3>& v) {
        for (int j = 0; j < 3; ++j) coeffs_[j][flat] = v[j];
    }

    // Forces u_hat(-k) = conj(u_hat(k)) by averaging each pair, and zeroes the
    // mean mode. Modes with a Nyquist component |k_j| = n/2 are dropped: the
    // lattice cannot represent -k for them, so odd spectral operators (Leray,
    // differentiation) would break the symmetry of a real field.
    void enforce_hermitian() {
        const std::size_t nn = grid_.size();
        const int half = grid_.n / 2;
        for (std::size_t i = 0; i < nn; ++i) {
            const auto k = grid_.wavenumber(i);
            if (k[0] == -half || k[1] == -half || k[2] == -half) {
                for (int c = 0; c < 3; ++c) coeffs_[c][i] = Complex(0.0, 0.0);
                continue;
            }
            const std::size_t jc = grid_.conjugate_index(i);
            if (jc < i) continue;
            for (int c = 0; c < 3; ++c) {
                if (jc == i) {
                    coeffs_[c][i] = Complex(coeffs_[c][i].real(), 0.0);
                } else {
                    const Complex avg = 0.5 * (coeffs_[c][i] + std::conj(coeffs_[c][jc]));
                    coeffs_[c][i] = avg;
                    coeffs_[c][jc] = std::conj(avg);
                }
            }
        }
        zero_mean();
    }

    void zero_mean() {
        for (int c = 0; c < 3; ++c) coeffs_[c][0] = Complex(0.0, 0.0);
    }

    bool is_finite() const {
        for (int c = 0; c < 3; ++c)
            for (const Complex& z : coeffs_[c])
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    // Largest |u_hat(k) - conj(u_hat(-k))| relative to the largest coefficient.
    double hermitian_asymmetry() const {
        double worst = 0.0, scale = 0.0;
        const std::size_t nn = grid_.size();
        for (std::size_t i = 0; i < nn; ++i) {
            const std::size_t jc = grid_.conjugate_index(i);
            for (int c = 0; c < 3; ++c) {
                worst = std::max(worst, std::abs(coeffs_[c][i] - std::conj(coeffs_[c][jc])));
                scale = std::max(scale, std::abs(coeffs_[c][i]));
            }
        }
        return scale > 0.0 ? worst / scale : 0.0;
    }

    // max_k |k.u_hat(k)| / max_k |k||u_hat(k)|, zero for the zero field.
    double divergence_ratio() const {
        double num = 0.0, den = 0.0;
        const std::size_t nn = grid_.size();
        for (std::size_t i = 1; i < nn; ++i) {
            const auto k = grid_.wavenumber(i);
            const Complex dot = static_cast<double>(k[0]) * coeffs_[0][i] +
                                static_cast<double>(k[1]) * coeffs_[1][i] +
                                static_cast<double>(k[2]) * coeffs_[2][i];
            const double kn = std::sqrt(static_cast<double>(Grid::ksq(k)));
            const double un = std::sqrt(std::norm(coeffs_[0][i]) + std::norm(coeffs_[1][i]) +
                                        std::norm(coeffs_[2][i]));
            num = std::max(num, std::abs(dot));
            den = std::max(den, kn * un);
        }
        return den > 0.0 ? num / den : 0.0;
    }

    bool is_zero() const {
        for (int c = 0; c < 3; ++c)
            for (const Complex& z : coeffs_[c])
                if (z != Complex(0.0, 0.0)) return false;
        return true;
    }

    SpectralVectorField& operator+=(const SpectralVectorField& o) {
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < coeffs_[c].size(); ++i) coeffs_[c][i] += o.coeffs_[c][i];
        return *this;
    }

    SpectralVectorField& operator-=(const SpectralVectorField& o) {
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < coeffs_[c].size(); ++i) coeffs_[c][i] -= o.coeffs_[c][i];
        return *this;
    }

    SpectralVectorField& operator*=(double s) {
        for (int c = 0; c < 3; ++c)
            for (Complex& z : coeffs_[c]) z *= s;
        return *this;
    }

    friend SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) {
        a += b;
        return a;
    }
    friend SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) {
        a -= b;
        return a;
    }
    friend SpectralVectorField operator*(double s, SpectralVectorField a) {
        a *= s;
        return a;
    }

    // this += s * o
    void axpy(double s, const SpectralVectorField& o) {
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < coeffs_[c].size(); ++i)
                coeffs_[c][i] += s * o.coeffs_[c][i];
    }

  private:
    Grid grid_;
    std::array<std::vector<Complex>, 3> coeffs_;
};

// Builds a field from an arbitrary coefficient map, then restores the class
// invariants: Hermitian symmetry by pair averaging, zero mean mode.
inline SpectralVectorField make_field(
    const Grid& grid,
    const std::function<std::array<Complex, 3>(const std::array<int, 3>&)>& coefficient_map) {
    SpectralVectorField u(grid);
    const std::size_t nn = grid.size();
    for (std::size_t i = 0; i < nn; ++i) {
        const auto v = coefficient_map(grid.wavenumber(i));
        for (int c = 0; c < 3; ++c) {
            if (!std::isfinite(v[c].real()) || !std::isfinite(v[c].imag()))
                throw OutOfRangeError("make_field: non-finite coefficient");
            u.at(c, i) = v[c];
        }
    }
    u.enforce_hermitian();
    return u;
}

}  // namespace eigenflow
