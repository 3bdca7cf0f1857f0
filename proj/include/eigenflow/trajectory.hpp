#pragma once

#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eigenflow/checkpoint.hpp"
#include "eigenflow/config.hpp"
#include "eigenflow/criteria.hpp"
#include "eigenflow/initial_data.hpp"
#include "eigenflow/solver.hpp"

namespace eigenflow {

inline SpectralVectorField build_initial_field(const InitialDataSpec& spec, const Grid& grid) {
    switch (spec.kind) {
        case InitialDataSpec::Kind::taylor_green:
            return taylor_green(grid, spec.amplitude);
        case InitialDataSpec::Kind::abc:
            return abc_flow(grid, spec.abc[0], spec.abc[1], spec.abc[2]);
        case InitialDataSpec::Kind::random_band:
            return random_band(grid, spec.band_r1, spec.band_r2, spec.spectral_slope,
                               spec.amplitude, spec.seed);
        case InitialDataSpec::Kind::single_mode:
            return single_mode(grid, spec.k0, spec.polarization, spec.amplitude);
        case InitialDataSpec::Kind::from_file: {
            SpectralVectorField u = read_checkpoint(spec.file);
            if (u.grid() != grid)
                throw FormatError("checkpoint grid does not match the configured grid");
            return u;
        }
    }
    throw OutOfRangeError("unhandled initial data kind");
}

struct EnergyPair {
    double energy = 0.0;     // 1/2 ||u||_{L^2}^2
    double enstrophy = 0.0;  // 1/2 ||grad u||_{L^2}^2
};

inline EnergyPair energy_enstrophy(const SpectralVectorField& u) {
    const Grid& g = u.grid();
    const double fs2 = g.frequency_scale() * g.frequency_scale();
    const double vol = std::pow(g.box_length, 3);
    double e = 0.0, z = 0.0;
    const std::size_t nn = g.size();
    for (std::size_t i = 0; i < nn; ++i) {
        const double d = std::norm(u.at(0, i)) + std::norm(u.at(1, i)) + std::norm(u.at(2, i));
        e += d;
        z += fs2 * Grid::ksq(g.wavenumber(i)) * d;
    }
    return {0.5 * vol * e, 0.5 * vol * z};
}

// Per-step scalar history of a run.
struct StepSeries {
    std::vector<double> t;
    std::vector<double> energy;
    std::vector<double> enstrophy;
    std::vector<double> dissipation_integral;  // int_0^t ||grad u||^2 dtau
};

struct QCriterionSample {
    double inf_value = 0.0;       // inf_lambda ||(-Lap-lambda)u||_{L^q}
    double integrand = 0.0;       // inf_value^p
    double accumulator = 0.0;     // trapezoid of the integrand over output times
    double bound_rhs = 0.0;       // ||grad u0||^2 exp(c_assumed * accumulator)
    double holder_product = 0.0;  // ||(-Lap-l0)u||_q ||u||_a ||grad u||_b
    double holder_margin = 0.0;   // -nu||Lap u||^2 + product - FD(enstrophy)
};

struct AlphaCriterionSample {
    double deficit = 0.0;
    double hs_alpha = 0.0;
    double integrand = 0.0;        // ||u||_alpha^p deficit^{p/2}
    double accumulator = 0.0;
    double bound_rhs = 0.0;
    double band_integrand = 0.0;   // ||u||_alpha^p (1-(r1/r2)^4)^{p/2}
    double band_accumulator = 0.0;
    double band_bound_rhs = 0.0;
};

struct DiagnosticRecord {
    std::size_t step = 0;
    double t = 0.0;
    double energy = 0.0;
    double enstrophy = 0.0;
    double palinstrophy_sq = 0.0;  // ||Lap u||^2
    double lambda0 = 0.0;
    double inf_l2 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double growth_identity_residual = 0.0;
    double lambda_independence_gap = 0.0;
    double energy_residual = 0.0;
    double fd_enstrophy = 0.0;  // centered-difference d/dt (1/2 ||grad u||^2)
    double fd_budget = std::numeric_limits<double>::infinity();
    std::vector<QCriterionSample> q_samples;
    std::vector<AlphaCriterionSample> alpha_samples;
};

struct Trajectory {
    RunConfig config;
    StepSeries series;
    std::vector<double> times;                 // output instants
    std::vector<std::size_t> record_steps;     // step index per output instant
    std::vector<SpectralVectorField> snapshots;
    std::vector<DiagnosticRecord> records;
    std::vector<std::string> checkpoint_files;
};

// Instantaneous enstrophy-growth identity
//   d/dt 1/2||grad u||^2 = -nu ||Lap u||^2 - <(-Lap - lambda)u, (u.grad)u>,
// whose pairing term is lambda-independent because <u, (u.grad)u> = 0.
inline double growth_identity_rhs(SpectralStepper& stepper, const SpectralVectorField& u,
                                  double lambda) {
    const SpectralVectorField adv = stepper.advection(u);
    const double pal = std::pow(hs_norm(u, 2.0), 2);
    return -stepper.viscosity() * pal - l2_inner(shifted_laplacian(u, lambda), adv);
}

inline double growth_identity_residual(SpectralStepper& stepper, const SpectralVectorField& u,
                                       double fd_ddt_enstrophy,
                                       std::optional<double> lambda = std::nullopt) {
    const double lam = lambda ? *lambda : inf_lambda_l2(u).lambda0;
    return std::abs(fd_ddt_enstrophy - growth_identity_rhs(stepper, u, lam));
}

namespace detail {

// Centered (interior) or one-sided second-order difference of the per-step
// enstrophy series at step s.
inline double fd_enstrophy(const StepSeries& se, std::size_t s, double dt) {
    const std::size_t last = se.enstrophy.size() - 1;
    if (last < 2) return 0.0;
    const auto& z = se.enstrophy;
    if (s == 0) return (-3.0 * z[0] + 4.0 * z[1] - z[2]) / (2.0 * dt);
    if (s == last) return (3.0 * z[last] - 4.0 * z[last - 1] + z[last - 2]) / (2.0 * dt);
    return (z[s + 1] - z[s - 1]) / (2.0 * dt);
}

// Finite-difference error allowance: 3 * (dt^2/6) * local max |d^3/dt^3|
// with the third derivative estimated from third central differences of the
// enstrophy history near step s.
inline double fd_budget(const StepSeries& se, std::size_t s, double dt) {
    const auto& z = se.enstrophy;
    if (z.size() < 5) return std::numeric_limits<double>::infinity();
    const std::size_t last = z.size() - 1;
    const std::size_t lo = s > 5 ? s - 5 : 0;
    const std::size_t hi = std::min(last, s + 5);
    double worst = 0.0;
    for (std::size_t w = std::max<std::size_t>(lo, 2); w + 2 <= hi; ++w) {
        const double d3 =
            (z[w + 2] - 2.0 * z[w + 1] + 2.0 * z[w - 1] - z[w - 2]) / (2.0 * dt * dt * dt);
        worst = std::max(worst, std::abs(d3));
    }
    if (worst == 0.0) return std::numeric_limits<double>::infinity();
    return 3.0 * dt * dt / 6.0 * worst;
}

}  // namespace detail

// Populates records (and per-criterion accumulators) for the stored output
// instants of a raw trajectory.
inline void analyze_trajectory(Trajectory& traj) {
    const RunConfig& cfg = traj.config;
    SpectralStepper stepper(cfg.grid, cfg.viscosity);
    const double dt = cfg.dt;
    const double nu = cfg.viscosity;
    const double e0 = traj.series.energy.empty() ? 0.0 : traj.series.energy.front();
    const double grad0_sq = traj.series.enstrophy.empty() ? 0.0
                                                          : 2.0 * traj.series.enstrophy.front();

    traj.records.assign(traj.snapshots.size(), DiagnosticRecord{});
    std::vector<double> accum_q(cfg.criteria.size(), 0.0);
    std::vector<double> accum_alpha(cfg.criteria.size(), 0.0);
    std::vector<double> accum_band(cfg.criteria.size(), 0.0);
    std::vector<double> prev_q(cfg.criteria.size(), 0.0);
    std::vector<double> prev_alpha(cfg.criteria.size(), 0.0);
    std::vector<double> prev_band(cfg.criteria.size(), 0.0);

    for (std::size_t ri = 0; ri < traj.snapshots.size(); ++ri) {
        const SpectralVectorField& u = traj.snapshots[ri];
        DiagnosticRecord& rec = traj.records[ri];
        const std::size_t s = traj.record_steps[ri];
        rec.step = s;
        rec.t = traj.times[ri];
        rec.energy = traj.series.energy[s];
        rec.enstrophy = traj.series.enstrophy[s];
        rec.palinstrophy_sq = std::pow(hs_norm(u, 2.0), 2);

        const InfimumResult inf2 = inf_lambda_l2(u);
        rec.lambda0 = inf2.lambda0;
        rec.inf_l2 = inf2.value;

        const BandReport band = band_radii(u, cfg.band_threshold);
        rec.r1 = band.r1;
        rec.r2 = band.r2;

        rec.fd_enstrophy = detail::fd_enstrophy(traj.series, s, dt);
        rec.fd_budget = detail::fd_budget(traj.series, s, dt);

        const SpectralVectorField adv = stepper.advection(u);
        const double pairing0 = l2_inner(neg_laplacian(u), adv);
        const double pairing_l0 = l2_inner(shifted_laplacian(u, rec.lambda0), adv);
        const double rhs0 = -nu * rec.palinstrophy_sq - pairing0;
        const double rhs_l0 = -nu * rec.palinstrophy_sq - pairing_l0;
        rec.growth_identity_residual = std::abs(rec.fd_enstrophy - rhs_l0);
        rec.lambda_independence_gap =
            std::abs(rhs0 - rhs_l0) / std::max(std::abs(rhs_l0), 1e-300);

        rec.energy_residual =
            e0 > 0.0
                ? std::abs(rec.energy + nu * traj.series.dissipation_integral[s] - e0) / e0
                : 0.0;

        rec.q_samples.clear();
        rec.alpha_samples.clear();
        const double dt_rec = ri > 0 ? traj.times[ri] - traj.times[ri - 1] : 0.0;
        for (std::size_t ci = 0; ci < cfg.criteria.size(); ++ci) {
            const CriterionSelection& sel = cfg.criteria[ci];
            if (sel.kind == CriterionSelection::Kind::lebesgue_q) {
                QCriterionSample qs;
                const InfimumResult inf_q = inf_lambda_lq(u, sel.params.q);
                qs.inf_value = inf_q.value;
                qs.integrand = std::pow(inf_q.value, sel.params.p);
                if (ri > 0) accum_q[ci] += 0.5 * dt_rec * (prev_q[ci] + qs.integrand);
                prev_q[ci] = qs.integrand;
                qs.accumulator = accum_q[ci];
                qs.bound_rhs = grad0_sq * std::exp(sel.c_assumed * qs.accumulator);
                const double shifted_q =
                    shift_objective_lq(u, sel.params.q, rec.lambda0);
                qs.holder_product = shifted_q * lq_norm(u, sel.params.a) *
                                    lq_norm_gradient(u, sel.params.b);
                qs.holder_margin =
                    -nu * rec.palinstrophy_sq + qs.holder_product - rec.fd_enstrophy;
                rec.q_samples.push_back(qs);
            } else {
                AlphaCriterionSample as;
                const DeficitReport dr = deficit_factor(u, sel.params.alpha);
                as.deficit = dr.deficit;
                as.hs_alpha = dr.hs_alpha;
                const double hs_p = std::pow(dr.hs_alpha, sel.params.p);
                as.integrand = hs_p * std::pow(dr.deficit, sel.params.p / 2.0);
                as.band_integrand = hs_p * std::pow(band.band_deficit_bound, sel.params.p / 2.0);
                if (ri > 0) {
                    accum_alpha[ci] += 0.5 * dt_rec * (prev_alpha[ci] + as.integrand);
                    accum_band[ci] += 0.5 * dt_rec * (prev_band[ci] + as.band_integrand);
                }
                prev_alpha[ci] = as.integrand;
                prev_band[ci] = as.band_integrand;
                as.accumulator = accum_alpha[ci];
                as.band_accumulator = accum_band[ci];
                as.bound_rhs = grad0_sq * std::exp(sel.c_assumed * as.accumulator);
                as.band_bound_rhs = grad0_sq * std::exp(sel.c_assumed * as.band_accumulator);
                rec.alpha_samples.push_back(as);
            }
        }
    }
}

// Galerkin-truncated integrating-factor integration of the configured problem,
// with per-step scalar series, snapshots and diagnostic records at the output
// cadence, and optional checkpoints.
inline Trajectory integrate(const RunConfig& cfg) {
    Trajectory traj;
    traj.config = cfg;

    SpectralVectorField u = build_initial_field(cfg.initial_data, cfg.grid);
    const bool was_nonzero = !u.is_zero();
    u.enforce_hermitian();  // no-op for generator output; repairs foreign checkpoints
    dealias(u);
    u = leray_project(u);
    u.zero_mean();
    if (was_nonzero && u.is_zero())
        throw OutOfRangeError("initial data lies entirely outside the dealiased sphere");

    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
    SpectralStepper stepper(cfg.grid, cfg.viscosity);
    DissipationQuadrature quad(cfg.grid, cfg.viscosity, cfg.dt);

    const bool write_ckpts = cfg.checkpoint_every > 0 && !cfg.output_dir.empty();
    if (write_ckpts) std::filesystem::create_directories(cfg.output_dir);

    auto emit = [&](std::size_t s, double t, const SpectralVectorField& field) {
        traj.times.push_back(t);
        traj.record_steps.push_back(s);
        traj.snapshots.push_back(field);
    };
    // checkpoint cadence is independent of the record cadence
    auto maybe_checkpoint = [&](std::size_t s, const SpectralVectorField& field) {
        if (!write_ckpts) return;
        if (s % static_cast<std::size_t>(cfg.checkpoint_every) != 0 && s != steps) return;
        const std::filesystem::path p =
            std::filesystem::path(cfg.output_dir) / ("ckpt_" + std::to_string(s) + ".field");
        write_checkpoint(p, field);
        traj.checkpoint_files.push_back(p.string());
    };

    const EnergyPair ez0 = energy_enstrophy(u);
    traj.series.t.push_back(0.0);
    traj.series.energy.push_back(ez0.energy);
    traj.series.enstrophy.push_back(ez0.enstrophy);
    traj.series.dissipation_integral.push_back(0.0);
    emit(0, 0.0, u);
    maybe_checkpoint(0, u);

    for (std::size_t s = 1; s <= steps; ++s) {
        const double t_prev = static_cast<double>(s - 1) * cfg.dt;
        SpectralVectorField next = stepper.step(u, cfg.dt, t_prev);
        const double t = static_cast<double>(s) * cfg.dt;
        const EnergyPair ez = energy_enstrophy(next);
        traj.series.t.push_back(t);
        traj.series.energy.push_back(ez.energy);
        traj.series.enstrophy.push_back(ez.enstrophy);
        traj.series.dissipation_integral.push_back(traj.series.dissipation_integral.back() +
                                                   quad.increment(u, next));
        u = std::move(next);
        if (s % static_cast<std::size_t>(cfg.output_every) == 0 || s == steps) emit(s, t, u);
        maybe_checkpoint(s, u);
    }

    analyze_trajectory(traj);
    return traj;
}

// Relative energy-balance residual |E(t) + nu int ||grad u||^2 - E(0)| / E(0)
// per output instant.
inline std::vector<double> energy_equality_residual(const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.records.size());
    for (const auto& r : traj.records) out.push_back(r.energy_residual);
    return out;
}

// Post-hoc growth-bound tracking for an arbitrary criterion selection.
struct GrowthBoundSeries {
    CriterionSelection selection;
    std::vector<double> integrand;
    std::vector<double> accumulator;
    std::vector<double> bound_rhs;
};

inline std::vector<GrowthBoundSeries> track_growth_bounds(
    const Trajectory& traj, const std::vector<CriterionSelection>& selections) {
    std::vector<GrowthBoundSeries> out;
    const double grad0_sq =
        traj.series.enstrophy.empty() ? 0.0 : 2.0 * traj.series.enstrophy.front();
    for (const auto& sel : selections) {
        GrowthBoundSeries gb;
        gb.selection = sel;
        double accum = 0.0, prev = 0.0;
        for (std::size_t ri = 0; ri < traj.snapshots.size(); ++ri) {
            const SpectralVectorField& u = traj.snapshots[ri];
            double integrand = 0.0;
            if (sel.kind == CriterionSelection::Kind::lebesgue_q) {
                integrand = std::pow(inf_lambda_lq(u, sel.params.q).value, sel.params.p);
            } else {
                const DeficitReport dr = deficit_factor(u, sel.params.alpha);
                integrand = std::pow(dr.hs_alpha, sel.params.p) *
                            std::pow(dr.deficit, sel.params.p / 2.0);
            }
            if (ri > 0) accum += 0.5 * (traj.times[ri] - traj.times[ri - 1]) * (prev + integrand);
            prev = integrand;
            gb.integrand.push_back(integrand);
            gb.accumulator.push_back(accum);
            gb.bound_rhs.push_back(grad0_sq * std::exp(sel.c_assumed * accum));
        }
        out.push_back(std::move(gb));
    }
    return out;
}

}  // namespace eigenflow
