#pragma once

#include <fftw3.h>

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "eigenflow/field.hpp"
#include "eigenflow/grid.hpp"

namespace eigenflow {

// FFTW-backed c2c transforms between coefficient space and collocation space.
// Convention: u(x_j) = sum_k u_hat(k) exp(2*pi*i k.j/n), so spectral->physical
// is FFTW_BACKWARD unscaled and physical->spectral is FFTW_FORWARD scaled by
// 1/n^3. Plans are cached per grid size behind a mutex (FFTW's planner is not
// thread safe); execution on distinct arrays is reentrant. Plans are created
// with FFTW_ESTIMATE | FFTW_UNALIGNED so results are deterministic and any
// caller-provided buffer is acceptable.
class Fft {
  public:
    static void spectral_to_physical(const Grid& g, const Complex* in, Complex* out) {
        execute(g.n, false, in, out);
    }

    static void physical_to_spectral(const Grid& g, const Complex* in, Complex* out) {
        execute(g.n, true, in, out);
        const double scale = 1.0 / static_cast<double>(g.size());
        const std::size_t nn = g.size();
        for (std::size_t i = 0; i < nn; ++i) out[i] *= scale;
    }

  private:
    struct Plans {
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
        std::vector<Complex> scratch_in, scratch_out;
        ~Plans() {
            if (forward) fftw_destroy_plan(forward);
            if (backward) fftw_destroy_plan(backward);
        }
    };

    static void execute(int n, bool forward, const Complex* in, Complex* out) {
        const Plans& p = plans_for(n);
        auto* fin = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in));
        auto* fout = reinterpret_cast<fftw_complex*>(out);
        fftw_execute_dft(forward ? p.forward : p.backward, fin, fout);
    }

    static const Plans& plans_for(int n) {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<Plans>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it == cache.end()) {
            auto p = std::make_unique<Plans>();
            const std::size_t nn = static_cast<std::size_t>(n) * n * n;
            p->scratch_in.assign(nn, Complex(0.0, 0.0));
            p->scratch_out.assign(nn, Complex(0.0, 0.0));
            auto* a = reinterpret_cast<fftw_complex*>(p->scratch_in.data());
            auto* b = reinterpret_cast<fftw_complex*>(p->scratch_out.data());
            const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
            p->forward = fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD, flags);
            p->backward = fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD, flags);
            it = cache.emplace(n, std::move(p)).first;
        }
        return *it->second;
    }
};

// Real-valued collocation samples of a vector field on the grid.
struct PhysicalVectorField {
    Grid grid;
    std::array<std::vector<double>, 3> comp;

    explicit PhysicalVectorField(const Grid& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), 0.0);
    }

    double magnitude(std::size_t i) const {
        return std::sqrt(comp[0][i] * comp[0][i] + comp[1][i] * comp[1][i] +
                         comp[2][i] * comp[2][i]);
    }

    double max_magnitude() const {
        double m = 0.0;
        for (std::size_t i = 0; i < comp[0].size(); ++i) m = std::max(m, magnitude(i));
        return m;
    }
};

// Inverse transform of one spectral component, keeping the complex samples.
// Valid (Hermitian) fields have vanishing imaginary parts; tests use the
// imaginary residual directly.
inline std::vector<Complex> component_to_physical_complex(const SpectralVectorField& u, int j) {
    std::vector<Complex> out(u.grid().size());
    Fft::spectral_to_physical(u.grid(), u.component(j).data(), out.data());
    return out;
}

inline PhysicalVectorField to_physical(const SpectralVectorField& u) {
    PhysicalVectorField p(u.grid());
    std::vector<Complex> buf(u.grid().size());
    for (int j = 0; j < 3; ++j) {
        Fft::spectral_to_physical(u.grid(), u.component(j).data(), buf.data());
        for (std::size_t i = 0; i < buf.size(); ++i) p.comp[j][i] = buf[i].real();
    }
    return p;
}

inline SpectralVectorField to_spectral(const PhysicalVectorField& p) {
    SpectralVectorField u(p.grid);
    std::vector<Complex> buf(p.grid.size());
    std::vector<Complex> out(p.grid.size());
    for (int j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = Complex(p.comp[j][i], 0.0);
        Fft::physical_to_spectral(p.grid, buf.data(), out.data());
        for (std::size_t i = 0; i < out.size(); ++i) u.at(j, i) = out[i];
    }
    return u;
}

}  // namespace eigenflow
