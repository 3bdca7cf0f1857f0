#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "eigenflow/fft.hpp"
#include "eigenflow/field.hpp"
#include "eigenflow/norms.hpp"
#include "eigenflow/operators.hpp"

namespace eigenflow {

// Pseudo-spectral right-hand side machinery and integrating-factor RK4 time
// stepping for du/dt = nu*Lap(u) - P_df((u.grad)u) on the periodic box.
// The viscous factor exp(-nu (2 pi |k|/L)^2 dt) is applied exactly per mode;
// the advective product is collocated, 2/3-rule masked, and projected, which
// makes it the exact Galerkin convolution for band-limited states and keeps
// <(u.grad)u, u> = 0 to rounding.
class SpectralStepper {
  public:
    explicit SpectralStepper(const Grid& grid, double viscosity = 1.0)
        : grid_(grid), nu_(viscosity) {
        if (!(nu_ >= 0.0) || !std::isfinite(nu_))
            throw OutOfRangeError("viscosity must be nonnegative and finite");
    }

    const Grid& grid() const { return grid_; }
    double viscosity() const { return nu_; }

    // Dealiased collocation product (u.grad)u. The input is masked before the
    // product, so the pairing <result, u> vanishes for any u, masked or not.
    SpectralVectorField advection(const SpectralVectorField& u) {
        SpectralVectorField v = dealiased(u);
        const std::size_t nn = grid_.size();
        const double fs = grid_.frequency_scale();

        PhysicalVectorField up(grid_);
        std::vector<Complex> buf(nn), out(nn);
        for (int j = 0; j < 3; ++j) {
            Fft::spectral_to_physical(grid_, v.component(j).data(), buf.data());
            for (std::size_t i = 0; i < nn; ++i) up.comp[j][i] = buf[i].real();
        }
        last_max_speed_ = up.max_magnitude();

        std::array<std::vector<double>, 3> adv;
        for (auto& a : adv) a.assign(nn, 0.0);
        for (int j = 0; j < 3; ++j) {
            for (int m = 0; m < 3; ++m) {
                std::size_t i = 0;
                for (int ax = 0; ax < grid_.n; ++ax)
                    for (int ay = 0; ay < grid_.n; ++ay)
                        for (int az = 0; az < grid_.n; ++az, ++i) {
                            const int km = m == 0 ? grid_.axis_wavenumber(ax)
                                         : m == 1 ? grid_.axis_wavenumber(ay)
                                                  : grid_.axis_wavenumber(az);
                            buf[i] = Complex(0.0, fs * km) * v.at(j, i);
                        }
                Fft::spectral_to_physical(grid_, buf.data(), out.data());
                for (std::size_t i = 0; i < nn; ++i) adv[j][i] += up.comp[m][i] * out[i].real();
            }
        }

        SpectralVectorField result(grid_);
        for (int j = 0; j < 3; ++j) {
            for (std::size_t i = 0; i < nn; ++i) buf[i] = Complex(adv[j][i], 0.0);
            Fft::physical_to_spectral(grid_, buf.data(), out.data());
            for (std::size_t i = 0; i < nn; ++i) result.at(j, i) = out[i];
        }
        dealias(result);
        result.zero_mean();
        return result;
    }

    // P_df(dealias((u.grad)u)); divergence-free by construction.
    SpectralVectorField nonlinear_term(const SpectralVectorField& u) {
        SpectralVectorField r = leray_project(advection(u));
        if (!r.is_finite())
            throw IntegrationBlowupError(0.0, "nonlinear term produced non-finite values");
        return r;
    }

    // One integrating-factor RK4 step of size dt. Enforces the advective CFL
    // bound max|u| dt / h <= 0.5 on entry.
    SpectralVectorField step(const SpectralVectorField& u, double dt, double t_now = 0.0) {
        if (!(dt > 0.0) || !std::isfinite(dt)) throw OutOfRangeError("step: dt must be positive");
        refresh_viscous_factors(dt);

        SpectralVectorField k1 = rhs_nonlinear(u);
        const double cfl = last_max_speed_ * dt / grid_.spacing();
        if (cfl > 0.5)
            throw CflViolationError(t_now, cfl,
                                    "CFL violation: max|u| dt/h = " + std::to_string(cfl));

        SpectralVectorField stage = u;
        stage.axpy(0.5 * dt, k1);
        apply_factors(stage, e_half_);
        const SpectralVectorField k2 = rhs_nonlinear(stage);

        stage = u;
        apply_factors(stage, e_half_);
        stage.axpy(0.5 * dt, k2);
        const SpectralVectorField k3 = rhs_nonlinear(stage);

        stage = u;
        apply_factors(stage, e_full_);
        SpectralVectorField k3h = k3;
        apply_factors(k3h, e_half_);
        stage.axpy(dt, k3h);
        const SpectralVectorField k4 = rhs_nonlinear(stage);

        SpectralVectorField out = u;
        apply_factors(out, e_full_);
        apply_factors(k1, e_full_);
        out.axpy(dt / 6.0, k1);
        SpectralVectorField k23 = k2 + k3;
        apply_factors(k23, e_half_);
        out.axpy(dt / 3.0, k23);
        out.axpy(dt / 6.0, k4);

        if (!out.is_finite())
            throw IntegrationBlowupError(t_now + dt, "time step produced non-finite values");
        return out;
    }

    double last_max_speed() const { return last_max_speed_; }

  private:
    SpectralVectorField rhs_nonlinear(const SpectralVectorField& u) {
        SpectralVectorField n = leray_project(advection(u));
        n *= -1.0;
        return n;
    }

    void refresh_viscous_factors(double dt) {
        if (dt == cached_dt_) return;
        const std::size_t nn = grid_.size();
        e_half_.resize(nn);
        e_full_.resize(nn);
        const double fs2 = grid_.frequency_scale() * grid_.frequency_scale();
        for (std::size_t i = 0; i < nn; ++i) {
            const double w2 = fs2 * Grid::ksq(grid_.wavenumber(i));
            e_half_[i] = std::exp(-nu_ * w2 * dt * 0.5);
            e_full_[i] = e_half_[i] * e_half_[i];
        }
        cached_dt_ = dt;
    }

    static void apply_factors(SpectralVectorField& u, const std::vector<double>& f) {
        for (int c = 0; c < 3; ++c) {
            auto& comp = u.component(c);
            for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= f[i];
        }
    }

    Grid grid_;
    double nu_;
    double last_max_speed_ = 0.0;
    double cached_dt_ = -1.0;
    std::vector<double> e_half_, e_full_;
};

// Weights for int_0^dt a(s) e^{-gamma s} ds with a(s) interpolated linearly
// between its endpoints, expressed against the *decayed* endpoint sample:
//   integral = dt * (wA * a(0) + wB * [a(dt) e^{-x}]),   x = gamma dt.
// Both weights tend to the plain trapezoid value 1/2 as x -> 0.
inline std::pair<double, double> exp_trapezoid_weights(double x) {
    if (x < 1e-4) {
        const double wa = 0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0;
        const double wb = 0.5 + x / 6.0 + x * x / 24.0 + x * x * x / 120.0;
        return {wa, wb};
    }
    if (x > 500.0) {
        // mode is extinguished within the step; endpoint value carries nothing
        return {1.0 / x - 1.0 / (x * x), 0.0};
    }
    const double em = std::exp(-x);
    const double phi1 = (1.0 - em) / x;                 // int e^{-xs} ds / dt
    const double psi = (1.0 - (1.0 + x) * em) / (x * x);  // int s e^{-xs} ds / dt^2
    const double wb = (std::exp(x) - 1.0 - x) / (x * x);
    return {phi1 - psi, wb};
}

// Per-step increment of int ||grad u||^2 dt, exact for pure viscous decay.
// The integrand per mode is w^2 |u_hat|^2 with decay rate 2 nu w^2; stripping
// that factor leaves the slow nonlinear variation, which is trapezoided.
class DissipationQuadrature {
  public:
    DissipationQuadrature(const Grid& grid, double viscosity, double dt)
        : grid_(grid) {
        const double fs2 = grid.frequency_scale() * grid.frequency_scale();
        const double vol = std::pow(grid.box_length, 3);
        const int mmax = grid.max_ksq();
        wa_.assign(mmax + 1, 0.0);
        wb_.assign(mmax + 1, 0.0);
        front_.assign(mmax + 1, 0.0);
        for (int m = 1; m <= mmax; ++m) {
            const double w2 = fs2 * m;
            const auto [wa, wb] = exp_trapezoid_weights(2.0 * viscosity * w2 * dt);
            wa_[m] = wa * dt;
            wb_[m] = wb * dt;
            front_[m] = w2 * vol;
        }
    }

    double increment(const SpectralVectorField& before, const SpectralVectorField& after) const {
        double sum = 0.0;
        const std::size_t nn = grid_.size();
        for (std::size_t i = 1; i < nn; ++i) {
            const int m = Grid::ksq(grid_.wavenumber(i));
            if (m == 0) continue;
            const double e0 = std::norm(before.at(0, i)) + std::norm(before.at(1, i)) +
                              std::norm(before.at(2, i));
            const double e1 = std::norm(after.at(0, i)) + std::norm(after.at(1, i)) +
                              std::norm(after.at(2, i));
            sum += front_[m] * (wa_[m] * e0 + wb_[m] * e1);
        }
        return sum;
    }

  private:
    Grid grid_;
    std::vector<double> wa_, wb_, front_;
};

}  // namespace eigenflow
