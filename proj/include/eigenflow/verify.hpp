#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eigenflow/report.hpp"
#include "eigenflow/trajectory.hpp"

namespace eigenflow::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // how far inside the tolerance the worst case sat
    std::string detail;
};

namespace detail {

// Deterministic full-spectrum solenoidal field for the property suite.
inline SpectralVectorField suite_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 eng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    auto gauss = [&eng]() {
        double u1;
        do {
            u1 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        } while (u1 <= 0.0);
        const double u2 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    SpectralVectorField u(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const int m = Grid::ksq(g.wavenumber(i));
        if (m == 0) continue;
        const double sigma = 1.0 / (1.0 + m);
        for (int c = 0; c < 3; ++c) u.at(c, i) = Complex(sigma * gauss(), sigma * gauss());
    }
    u.enforce_hermitian();
    return leray_project(u);
}

inline RunConfig suite_run_config() {
    RunConfig cfg;
    cfg.grid = Grid(16, 2.0 * kPi);
    cfg.dt = 2e-3;
    cfg.t_end = 0.2;
    cfg.output_every = 10;
    cfg.initial_data.kind = InitialDataSpec::Kind::taylor_green;
    cfg.initial_data.amplitude = 1.0;
    CriterionSelection q2;
    q2.kind = CriterionSelection::Kind::lebesgue_q;
    q2.value = 2.0;
    q2.params = criterion_params_from_q(2.0);
    cfg.criteria = {q2};
    return cfg;
}

}  // namespace detail

inline std::vector<CheckResult> run_property_suite(const std::string& filter = "") {
    std::vector<CheckResult> results;
    auto check = [&](const std::string& name, const std::function<CheckResult()>& fn) {
        if (!filter.empty() && name.find(filter) == std::string::npos) return;
        CheckResult r = fn();
        r.name = name;
        results.push_back(std::move(r));
    };

    check("plancherel", [] {
        CheckResult r;
        double worst = 0.0;
        int idx = 0;
        for (int n : {8, 16, 32}) {
            const Grid g(n);
            const int count = n == 8 ? 34 : 33;
            for (int i = 0; i < count; ++i) {
                const auto u = detail::suite_field(g, 1000 + idx++);
                const double a = lq_norm(u, 2.0);
                const double b = hs_norm(u, 0.0);
                worst = std::max(worst, std::abs(a - b) / b);
            }
        }
        r.pass = worst <= 1e-10;
        r.margin = 1e-10 - worst;
        r.detail = "worst relative gap " + format17(worst) + " over 100 fields, n in {8,16,32}";
        return r;
    });

    check("norm-interpolation", [] {
        CheckResult r;
        double worst = 1.0;
        for (int i = 0; i < 60; ++i) {
            const auto u = detail::suite_field(Grid(16), 2000 + i);
            for (double alpha : {2.0, 2.25, 2.5}) {
                const double lhs = std::pow(hs_norm(u, alpha - 1.0), 2);
                const double rhs = hs_norm(u, alpha - 2.0) * hs_norm(u, alpha);
                worst = std::min(worst, (rhs * (1.0 + 1e-12) - lhs) / rhs);
            }
        }
        r.pass = worst >= 0.0;
        r.margin = worst;
        r.detail = "worst relative slack " + format17(worst);
        return r;
    });

    check("leray-projection", [] {
        CheckResult r;
        double worst = 0.0;
        for (int i = 0; i < 30; ++i) {
            const Grid g(16);
            const auto u = detail::suite_field(g, 3000 + i);
            const auto v = detail::suite_field(g, 3500 + i);
            const auto pu = leray_project(u);
            const auto p2 = leray_project(pu);
            double diff = 0.0, scale = 0.0;
            for (int c = 0; c < 3; ++c)
                for (std::size_t k = 0; k < g.size(); ++k) {
                    diff = std::max(diff, std::abs(p2.at(c, k) - pu.at(c, k)));
                    scale = std::max(scale, std::abs(pu.at(c, k)));
                }
            worst = std::max(worst, diff / scale);
            const double a = l2_inner(pu, v);
            const double b = l2_inner(u, leray_project(v));
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
        }
        r.pass = worst <= 1e-12;
        r.margin = 1e-12 - worst;
        r.detail = "worst idempotence/self-adjointness gap " + format17(worst);
        return r;
    });

    check("fft-round-trip", [] {
        CheckResult r;
        double worst = 0.0;
        for (int n : {8, 16, 32}) {
            const Grid g(n);
            const auto u = detail::suite_field(g, 4000 + n);
            const auto back = to_spectral(to_physical(u));
            double diff = 0.0, scale = 0.0;
            for (int c = 0; c < 3; ++c)
                for (std::size_t i = 0; i < g.size(); ++i) {
                    diff = std::max(diff, std::abs(back.at(c, i) - u.at(c, i)));
                    scale = std::max(scale, std::abs(u.at(c, i)));
                }
            worst = std::max(worst, diff / scale);
        }
        r.pass = worst <= 1e-12;
        r.margin = 1e-12 - worst;
        r.detail = "worst coefficient error " + format17(worst);
        return r;
    });

    check("rescaling-covariance", [] {
        CheckResult r;
        double worst = 0.0;
        const Grid src(16), dst(32);
        for (int i = 0; i < 10; ++i) {
            const auto u = random_band(src, 1.0, 4.0, -5.0 / 3.0, 1.0, 5000 + i);
            const auto u2 = integer_rescale(u, 2, dst);
            for (double a : {0.0, 1.0, 2.0}) {
                const double expected = std::pow(2.0, 1.0 + a) * hs_norm(u, a);
                worst = std::max(worst, std::abs(hs_norm(u2, a) - expected) / expected);
            }
        }
        r.pass = worst <= 1e-10;
        r.margin = 1e-10 - worst;
        r.detail = "worst relative scaling error " + format17(worst);
        return r;
    });

    check("closed-form-vs-search", [] {
        CheckResult r;
        double worst = 0.0;
        const Grid g(16);
        for (int i = 0; i < 100; ++i) {
            const auto u = random_band(g, 1.0, 5.0, -5.0 / 3.0, 1.0, 6000 + i);
            const auto closed = inf_lambda_l2(u);
            const auto searched = inf_lambda_lq(u, 2.0);
            worst = std::max(worst,
                             std::abs(searched.value - closed.value) / (1.0 + closed.value));
        }
        r.pass = worst <= 1e-8;
        r.margin = 1e-8 - worst;
        r.detail = "worst |closed - search| / (1+value) = " + format17(worst);
        return r;
    });

    check("minimizer-certificate", [] {
        CheckResult r;
        double worst = std::numeric_limits<double>::infinity();
        const Grid g(16);
        for (int i = 0; i < 20; ++i) {
            const auto u = detail::suite_field(g, 7000 + i);
            for (double beta : {0.0, 0.5}) {
                const auto res = inf_lambda_hbeta(u, beta);
                const double delta = 1e-6 * std::max(1.0, std::abs(res.lambda0));
                for (double s : {-1.0, 1.0}) {
                    const double v = shift_objective_hbeta(u, beta, res.lambda0 + s * delta);
                    worst = std::min(worst, v - (res.value - 1e-9));
                }
            }
        }
        r.pass = worst >= 0.0;
        r.margin = worst;
        r.detail = "worst certificate slack " + format17(worst);
        return r;
    });

    check("deficit-scale-invariance", [] {
        CheckResult r;
        double worst = 0.0;
        const Grid src(16), dst(32);
        for (int i = 0; i < 10; ++i) {
            const auto u = random_band(src, 1.0, 4.0, -5.0 / 3.0, 1.0, 8000 + i);
            const auto u2 = integer_rescale(u, 2, dst);
            for (double alpha : {2.0, 2.25, 2.5}) {
                const double r1 = deficit_factor(u, alpha).ratio;
                const double r2 = deficit_factor(u2, alpha).ratio;
                worst = std::max(worst, std::abs(r1 - r2));
            }
        }
        r.pass = worst <= 1e-10;
        r.margin = 1e-10 - worst;
        r.detail = "worst ratio drift " + format17(worst);
        return r;
    });

    check("infimum-scaling", [] {
        CheckResult r;
        double worst = 0.0;
        const Grid src(16), dst(32);
        for (int i = 0; i < 10; ++i) {
            const auto u = random_band(src, 1.0, 4.0, -5.0 / 3.0, 1.0, 9000 + i);
            const auto u2 = integer_rescale(u, 2, dst);
            const auto a = inf_lambda_l2(u);
            const auto b = inf_lambda_l2(u2);
            worst = std::max(worst, std::abs(b.value - 8.0 * a.value) / (8.0 * a.value));
            worst = std::max(worst, std::abs(b.lambda0 - 4.0 * a.lambda0) / (4.0 * a.lambda0));
        }
        r.pass = worst <= 1e-9;
        r.margin = 1e-9 - worst;
        r.detail = "worst relative scaling error " + format17(worst);
        return r;
    });

    check("band-bound", [] {
        CheckResult r;
        double worst = std::numeric_limits<double>::infinity();
        const Grid g(16);
        std::mt19937_64 eng(77);
        for (int i = 0; i < 40; ++i) {
            const double r1 = 1.0 + (eng() % 3);
            const double r2 = r1 + (eng() % 2) + 1.0;
            if (r2 > g.n / 3.0) continue;
            const auto u = random_band(g, r1, r2, -1.0, 1.0, 10000 + i);
            const auto band = band_radii(u);
            for (double alpha : {2.0, 2.25, 2.5}) {
                const auto d = deficit_factor(u, alpha);
                worst = std::min(worst,
                                 d.ratio - (std::pow(band.r1 / band.r2, 4.0) - 1e-12));
            }
        }
        r.pass = worst >= 0.0;
        r.margin = worst;
        r.detail = "worst ratio slack over annulus fields " + format17(worst);
        return r;
    });

    check("sobolev-constant-shape", [] {
        CheckResult r;
        double prev = std::numeric_limits<double>::infinity();
        bool decreasing = true;
        for (int i = 0; i < 100; ++i) {
            const double s = 0.01 + (1.2 - 0.01) * i / 99.0;
            const double c = sharp_sobolev_constant(s);
            decreasing = decreasing && c < prev;
            prev = c;
        }
        const bool endpoint_blowup = sharp_sobolev_constant(1.49) > sharp_sobolev_constant(1.3);
        r.pass = decreasing && endpoint_blowup;
        r.margin = r.pass ? 1.0 : -1.0;
        r.detail = "decreasing on (0.01,1.2], pole-driven growth toward 3/2";
        return r;
    });

    check("galerkin-skew-symmetry", [] {
        CheckResult r;
        double worst = 0.0;
        const Grid g(16);
        SpectralStepper st(g);
        for (int i = 0; i < 100; ++i) {
            const auto u = detail::suite_field(g, 11000 + i);
            const auto nl = st.nonlinear_term(u);
            const double skew = std::abs(l2_inner(nl, u));
            worst = std::max(worst, skew / (hs_norm(nl, 0.0) * hs_norm(u, 0.0)));
        }
        r.pass = worst <= 1e-12;
        r.margin = 1e-12 - worst;
        r.detail = "worst <N(u),u>/(||N|| ||u||) = " + format17(worst);
        return r;
    });

    // run-based checks share one short Taylor-Green trajectory
    Trajectory traj;
    bool have_traj = false;
    auto ensure_traj = [&]() -> Trajectory& {
        if (!have_traj) {
            traj = integrate(detail::suite_run_config());
            have_traj = true;
        }
        return traj;
    };

    check("divergence-preservation", [&] {
        CheckResult r;
        double worst = 0.0;
        for (const auto& u : ensure_traj().snapshots)
            worst = std::max(worst, u.divergence_ratio());
        r.pass = worst <= 1e-12;
        r.margin = 1e-12 - worst;
        r.detail = "worst divergence ratio " + format17(worst);
        return r;
    });

    check("energy-dissipation", [&] {
        CheckResult r;
        const auto& e = ensure_traj().series.energy;
        double worst = 0.0;
        for (std::size_t s = 1; s < e.size(); ++s)
            worst = std::max(worst, (e[s] - e[s - 1]) / e.front());
        r.pass = worst <= 0.0;
        r.margin = -worst;
        r.detail = "largest per-step energy increase (relative) " + format17(worst);
        return r;
    });

    check("lambda-independence", [&] {
        CheckResult r;
        double worst = 0.0;
        for (const auto& rec : ensure_traj().records)
            worst = std::max(worst, rec.lambda_independence_gap);
        r.pass = worst <= 1e-10;
        r.margin = 1e-10 - worst;
        r.detail = "worst relative gap " + format17(worst);
        return r;
    });

    check("gronwall-consistency", [&] {
        CheckResult r;
        const auto& t = ensure_traj();
        double max_ratio = 0.0;
        for (const auto& rec : t.records) {
            const double dgrad = 2.0 * rec.fd_enstrophy;
            const double denom = rec.q_samples[0].integrand * 2.0 * rec.enstrophy;
            if (dgrad > 0.0 && denom > 0.0) max_ratio = std::max(max_ratio, dgrad / denom);
        }
        const double c = 10.0 * max_ratio;
        double worst = std::numeric_limits<double>::infinity();
        const double grad0 = 2.0 * t.series.enstrophy.front();
        for (const auto& rec : t.records) {
            const double rhs = grad0 * std::exp(c * rec.q_samples[0].accumulator);
            worst = std::min(worst, (rhs - 2.0 * rec.enstrophy) / rhs);
        }
        r.pass = worst >= 0.0;
        r.margin = worst;
        r.detail = "c=10*max pointwise ratio; worst relative slack " + format17(worst);
        return r;
    });

    check("temporal-convergence", [] {
        CheckResult r;
        std::vector<SpectralVectorField> sol;
        for (double dt : {4e-3, 2e-3, 1e-3}) {
            RunConfig cfg = detail::suite_run_config();
            cfg.initial_data.amplitude = 2.0;
            cfg.dt = dt;
            cfg.t_end = 0.08;
            cfg.output_every = 1000000;
            cfg.criteria.clear();
            sol.push_back(integrate(cfg).snapshots.back());
        }
        auto d1 = sol[0];
        d1 -= sol[1];
        auto d2 = sol[1];
        d2 -= sol[2];
        const double ratio = hs_norm(d1, 0.0) / hs_norm(d2, 0.0);
        r.pass = ratio > 12.0 && ratio < 20.0;
        r.margin = std::min(ratio - 12.0, 20.0 - ratio);
        r.detail = "Richardson ratio " + format17(ratio) + " (expect ~16)";
        return r;
    });

    check("generator-invariants", [] {
        CheckResult r;
        const Grid g(16);
        const SpectralVectorField fields[] = {
            taylor_green(g, 1.0), abc_flow(g, 1.0, 0.5, 0.25),
            single_mode(g, {1, 1, 0}, {1.0, -1.0, 0.0}),
            random_band(g, 1.0, 4.0, -5.0 / 3.0, 1.0, 12345)};
        double worst = 0.0;
        for (const auto& u : fields) {
            worst = std::max(worst, u.hermitian_asymmetry());
            worst = std::max(worst, u.divergence_ratio());
        }
        r.pass = worst <= 1e-12;
        r.margin = 1e-12 - worst;
        r.detail = "worst invariant violation " + format17(worst);
        return r;
    });

    check("eigenfunction-generators", [] {
        CheckResult r;
        const Grid g(16);
        struct Case {
            SpectralVectorField u;
            double lambda;
        };
        const Case cases[] = {{taylor_green(g, 1.0), 12.0 * kPi * kPi},
                              {abc_flow(g, 0.8, 1.1, 0.5), 4.0 * kPi * kPi},
                              {single_mode(g, {2, 1, 0}, {1.0, -2.0, 0.0}), 20.0 * kPi * kPi}};
        double worst = 0.0;
        for (const auto& c : cases) {
            const auto inf = inf_lambda_l2(c.u);
            worst = std::max(worst, inf.value / hs_norm(c.u, 2.0) / 1e-10);
            worst = std::max(worst, std::abs(inf.lambda0 - c.lambda) / c.lambda / 1e-12);
        }
        r.pass = worst <= 1.0;
        r.margin = 1.0 - worst;
        r.detail = "worst normalized error " + format17(worst);
        return r;
    });

    check("random-band-slope", [] {
        CheckResult r;
        const auto u = random_band(Grid(64), 2.0, 10.0, -5.0 / 3.0, 1.0, 123);
        const auto spectrum = shell_energies(u);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (const auto& [m, e] : spectrum.shells) {
            if (e <= 0.0) continue;
            const double x = 0.5 * std::log(static_cast<double>(m));
            const double y = std::log(e);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++cnt;
        }
        const double fitted = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        const double err = std::abs(fitted + 5.0 / 3.0);
        r.pass = err <= 0.2;
        r.margin = 0.2 - err;
        r.detail = "fitted slope " + format17(fitted) + " target -5/3";
        return r;
    });

    check("csv-schema", [&] {
        CheckResult r;
        const auto& t = ensure_traj();
        const std::string csv = diagnostics_csv(t);
        std::istringstream is(csv);
        std::string header;
        std::getline(is, header);
        std::ostringstream expect;
        const auto cols = csv_columns(t.config);
        for (std::size_t i = 0; i < cols.size(); ++i) expect << (i ? "," : "") << cols[i];
        bool rows_ok = true;
        std::string row;
        std::size_t nrows = 0;
        while (std::getline(is, row)) {
            if (row.empty()) continue;
            ++nrows;
            std::size_t fields = 1;
            for (char ch : row) fields += ch == ',';
            rows_ok = rows_ok && fields == cols.size();
        }
        r.pass = header == expect.str() && rows_ok && nrows == t.records.size();
        r.margin = r.pass ? 1.0 : -1.0;
        r.detail = std::to_string(nrows) + " rows x " + std::to_string(cols.size()) + " columns";
        return r;
    });

    check("diagnose-consistency", [&] {
        CheckResult r;
        const auto& t = ensure_traj();
        const auto& u = t.snapshots.back();
        const auto& rec = t.records.back();
        const auto rep = diagnose_report(u, t.config.criteria, t.config.band_threshold);
        double worst = 0.0;
        auto rel = [](double a, double b) {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
        };
        worst = std::max(worst, rel(rep["field"]["energy"].get<double>(), rec.energy));
        worst = std::max(worst, rel(rep["shift_infimum_l2"]["lambda0"].get<double>(), rec.lambda0));
        worst = std::max(worst,
                         rel(rep["q_criteria"][0]["inf_value"].get<double>(),
                             rec.q_samples[0].inf_value));
        r.pass = worst <= 1e-12;
        r.margin = 1e-12 - worst;
        r.detail = "worst relative mismatch " + format17(worst);
        return r;
    });

    return results;
}

inline int print_suite(const std::vector<CheckResult>& results, std::ostream& os) {
    int failures = 0;
    for (const auto& r : results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " - " << r.detail << "\n";
        if (!r.pass) ++failures;
    }
    os << (failures == 0 ? "all properties hold" : std::to_string(failures) + " properties failed")
       << " (" << results.size() << " checks)\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace eigenflow::verify
