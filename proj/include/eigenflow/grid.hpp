#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "eigenflow/errors.hpp"

namespace eigenflow {

inline constexpr double kPi = 3.14159265358979323846;

// Uniform periodic lattice on [0,L)^3 with n collocation points per axis.
// Wavenumbers follow standard FFT ordering per axis: 0,1,...,n/2-1,-n/2,...,-1.
// The physical frequency of integer mode k is 2*pi*|k|/L.
struct Grid {
    int n = 0;
    double box_length = 1.0;

    Grid() = default;

    explicit Grid(int modes_per_axis, double length = 1.0)
        : n(modes_per_axis), box_length(length) {
        if (n < 8 || n % 2 != 0)
            throw OutOfRangeError("grid size must be even and >= 8, got " + std::to_string(n));
        if (!(box_length > 0.0) || !std::isfinite(box_length))
            throw OutOfRangeError("box_length must be positive and finite");
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

    double spacing() const { return box_length / n; }

    // 2*pi/L; multiply by an integer wavenumber to get the physical frequency.
    double frequency_scale() const { return 2.0 * kPi / box_length; }

    // Signed wavenumber of axis index a in [0,n).
    int axis_wavenumber(int a) const { return a < n / 2 ? a : a - n; }

    // Axis index of signed wavenumber k (any k congruent mod n).
    int axis_index(int k) const {
        int a = k % n;
        return a < 0 ? a + n : a;
    }

    std::size_t flat_index(int ax, int ay, int az) const {
        return (static_cast<std::size_t>(ax) * n + ay) * n + az;
    }

    std::size_t index_of(const std::array<int, 3>& k) const {
        return flat_index(axis_index(k[0]), axis_index(k[1]), axis_index(k[2]));
    }

    std::array<int, 3> wavenumber(std::size_t flat) const {
        const int az = static_cast<int>(flat % n);
        const int ay = static_cast<int>((flat / n) % n);
        const int ax = static_cast<int>(flat / (static_cast<std::size_t>(n) * n));
        return {axis_wavenumber(ax), axis_wavenumber(ay), axis_wavenumber(az)};
    }

    // Index of -k; pairs each mode with its Hermitian partner.
    std::size_t conjugate_index(std::size_t flat) const {
        const int az = static_cast<int>(flat % n);
        const int ay = static_cast<int>((flat / n) % n);
        const int ax = static_cast<int>(flat / (static_cast<std::size_t>(n) * n));
        const int bx = ax == 0 ? 0 : n - ax;
        const int by = ay == 0 ? 0 : n - ay;
        const int bz = az == 0 ? 0 : n - az;
        return flat_index(bx, by, bz);
    }

    static int ksq(const std::array<int, 3>& k) {
        return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    }

    // Largest |k|^2 representable on the lattice.
    int max_ksq() const {
        const int h = n / 2;
        return 3 * h * h;
    }

    bool operator==(const Grid& o) const { return n == o.n && box_length == o.box_length; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

}  // namespace eigenflow
