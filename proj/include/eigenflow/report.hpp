#pragma once

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eigenflow/trajectory.hpp"
#include "eigenflow/version.hpp"

namespace eigenflow {

using Json = nlohmann::json;

inline std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Compact tag for column names: q2, q3, alpha2.25, ...
inline std::string criterion_tag(const CriterionSelection& sel) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s%g",
                  sel.kind == CriterionSelection::Kind::lebesgue_q ? "q" : "alpha", sel.value);
    return buf;
}

inline std::vector<std::string> csv_columns(const RunConfig& cfg) {
    std::vector<std::string> cols = {
        "step", "t", "energy", "enstrophy", "palinstrophy_sq", "lambda0", "inf_l2",
        "r1", "r2", "growth_identity_residual", "lambda_independence_gap", "energy_residual"};
    for (const auto& sel : cfg.criteria) {
        const std::string tag = criterion_tag(sel);
        if (sel.kind == CriterionSelection::Kind::lebesgue_q) {
            cols.push_back(tag + "_inf");
            cols.push_back(tag + "_integrand");
            cols.push_back(tag + "_accum");
            cols.push_back(tag + "_bound_rhs");
            cols.push_back(tag + "_holder_margin");
        } else {
            cols.push_back(tag + "_deficit");
            cols.push_back(tag + "_hs");
            cols.push_back(tag + "_integrand");
            cols.push_back(tag + "_accum");
            cols.push_back(tag + "_bound_rhs");
            cols.push_back(tag + "_band_integrand");
            cols.push_back(tag + "_band_accum");
            cols.push_back(tag + "_band_bound_rhs");
        }
    }
    return cols;
}

inline std::string diagnostics_csv(const Trajectory& traj) {
    std::ostringstream os;
    const auto cols = csv_columns(traj.config);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : traj.records) {
        os << r.step << ',' << format17(r.t) << ',' << format17(r.energy) << ','
           << format17(r.enstrophy) << ',' << format17(r.palinstrophy_sq) << ','
           << format17(r.lambda0) << ',' << format17(r.inf_l2) << ',' << format17(r.r1) << ','
           << format17(r.r2) << ',' << format17(r.growth_identity_residual) << ','
           << format17(r.lambda_independence_gap) << ',' << format17(r.energy_residual);
        std::size_t qi = 0, ai = 0;
        for (const auto& sel : traj.config.criteria) {
            if (sel.kind == CriterionSelection::Kind::lebesgue_q) {
                const auto& s = r.q_samples[qi++];
                os << ',' << format17(s.inf_value) << ',' << format17(s.integrand) << ','
                   << format17(s.accumulator) << ',' << format17(s.bound_rhs) << ','
                   << format17(s.holder_margin);
            } else {
                const auto& s = r.alpha_samples[ai++];
                os << ',' << format17(s.deficit) << ',' << format17(s.hs_alpha) << ','
                   << format17(s.integrand) << ',' << format17(s.accumulator) << ','
                   << format17(s.bound_rhs) << ',' << format17(s.band_integrand) << ','
                   << format17(s.band_accumulator) << ',' << format17(s.band_bound_rhs);
            }
        }
        os << "\n";
    }
    return os.str();
}

inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot open '" + tmp.string() + "' for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw FormatError("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline Json summary_json(const Trajectory& traj) {
    const RunConfig& cfg = traj.config;
    Json j;
    j["version"] = version_string();
    j["versions"]["eigenflow"] = version_string();
    j["versions"]["fftw"] = std::string(fftw_version);
    j["config_hash"] = config_hash(cfg);
    j["config"] = Json::object();
    for (const auto& [k, v] : cfg.entries) j["config"][k] = v;
    j["grid"] = {{"n", cfg.grid.n}, {"box_length", cfg.grid.box_length}};
    j["steps"] = traj.series.t.empty() ? 0 : traj.series.t.size() - 1;
    j["realized_t_end"] = traj.series.t.empty() ? 0.0 : traj.series.t.back();
    j["records"] = traj.records.size();
    // basenames: keeps artifacts relocatable and reruns byte-identical under
    // different output directories
    Json ckpts = Json::array();
    for (const auto& p : traj.checkpoint_files)
        ckpts.push_back(std::filesystem::path(p).filename().string());
    j["checkpoints"] = ckpts;

    double max_energy_residual = 0.0;
    int holder_violations = 0;
    int gronwall_violations = 0;
    for (const auto& r : traj.records) {
        max_energy_residual = std::max(max_energy_residual, r.energy_residual);
        for (const auto& s : r.q_samples) {
            if (s.holder_margin < -r.fd_budget) ++holder_violations;
            if (2.0 * r.enstrophy > s.bound_rhs) ++gronwall_violations;
        }
        for (const auto& s : r.alpha_samples)
            if (2.0 * r.enstrophy > s.bound_rhs) ++gronwall_violations;
    }
    j["flags"] = {{"resolution_warning", max_energy_residual > 1e-3},
                  {"holder_violations", holder_violations},
                  {"gronwall_violations", gronwall_violations}};
    j["max_energy_residual"] = max_energy_residual;

    if (!traj.records.empty()) {
        const auto& last = traj.records.back();
        Json finals;
        finals["t"] = last.t;
        finals["energy"] = last.energy;
        finals["enstrophy"] = last.enstrophy;
        Json crits = Json::array();
        std::size_t qi = 0, ai = 0;
        for (const auto& sel : cfg.criteria) {
            Json c;
            c["tag"] = criterion_tag(sel);
            c["c_assumed"] = sel.c_assumed;
            c["p"] = sel.params.p;
            if (sel.kind == CriterionSelection::Kind::lebesgue_q) {
                const auto& s = last.q_samples[qi++];
                c["accumulator"] = s.accumulator;
                c["bound_rhs"] = s.bound_rhs;
            } else {
                const auto& s = last.alpha_samples[ai++];
                c["accumulator"] = s.accumulator;
                c["bound_rhs"] = s.bound_rhs;
                c["band_accumulator"] = s.band_accumulator;
                c["band_bound_rhs"] = s.band_bound_rhs;
            }
            crits.push_back(c);
        }
        finals["criteria"] = crits;
        j["final"] = finals;
    }
    return j;
}

// Sidecar run metadata: output instants, step size, config hash, checkpoints.
inline Json trajectory_metadata(const Trajectory& traj) {
    Json j;
    j["dt"] = traj.config.dt;
    j["config_hash"] = config_hash(traj.config);
    j["times"] = traj.times;
    j["record_steps"] = traj.record_steps;
    Json ckpts = Json::array();
    for (const auto& p : traj.checkpoint_files)
        ckpts.push_back(std::filesystem::path(p).filename().string());
    j["checkpoints"] = ckpts;
    return j;
}

// Single-snapshot evaluation of every criterion quantity plus the inequality
// self-checks, for the diagnose command.
inline Json diagnose_report(const SpectralVectorField& u,
                            const std::vector<CriterionSelection>& selections,
                            double band_threshold = 1e-13) {
    Json j;
    const EnergyPair ez = energy_enstrophy(u);
    j["field"] = {{"n", u.grid().n},
                  {"box_length", u.grid().box_length},
                  {"energy", ez.energy},
                  {"enstrophy", ez.enstrophy},
                  {"palinstrophy_sq", std::pow(hs_norm(u, 2.0), 2)},
                  {"divergence_ratio", u.divergence_ratio()},
                  {"hermitian_asymmetry", u.hermitian_asymmetry()}};

    const InfimumResult inf2 = inf_lambda_l2(u);
    j["shift_infimum_l2"] = {{"lambda0", inf2.lambda0},
                             {"value", inf2.value},
                             {"method", InfimumResult::method_name(inf2.method)}};

    const BandReport band = band_radii(u, band_threshold);
    j["band"] = {{"r1", band.r1},
                 {"r2", band.r2},
                 {"threshold", band.threshold},
                 {"band_deficit_bound", band.band_deficit_bound}};

    Json qcrit = Json::array();
    Json acrit = Json::array();
    bool band_ok = true;
    double band_margin = std::numeric_limits<double>::infinity();
    for (const auto& sel : selections) {
        if (sel.kind == CriterionSelection::Kind::lebesgue_q) {
            const InfimumResult infq = inf_lambda_lq(u, sel.params.q);
            qcrit.push_back({{"q", sel.params.q},
                             {"p", sel.params.p},
                             {"a", sel.params.a},
                             {"b", sel.params.b},
                             {"inf_value", infq.value},
                             {"lambda_argmin", infq.lambda0},
                             {"iterations", infq.iterations},
                             {"integrand", std::pow(infq.value, sel.params.p)}});
        } else {
            const double alpha = sel.params.alpha;
            const DeficitReport dr = deficit_factor(u, alpha);
            const InfimumResult infb = inf_lambda_hbeta(u, alpha - 2.0);
            const double margin = band.band_deficit_bound - dr.deficit + 1e-12;
            band_ok = band_ok && margin >= 0.0;
            band_margin = std::min(band_margin, margin);
            acrit.push_back({{"alpha", alpha},
                             {"p", sel.params.p},
                             {"deficit", dr.deficit},
                             {"ratio", dr.ratio},
                             {"hs_alpha", dr.hs_alpha},
                             {"integrand",
                              std::pow(dr.hs_alpha, sel.params.p) *
                                  std::pow(dr.deficit, sel.params.p / 2.0)},
                             {"hbeta_infimum",
                              {{"beta", alpha - 2.0}, {"lambda0", infb.lambda0},
                               {"value", infb.value}}}});
        }
    }
    j["q_criteria"] = qcrit;
    j["alpha_criteria"] = acrit;

    // interpolation inequality ||u||_{a-1}^2 <= ||u||_{a-2} ||u||_a
    Json interp = Json::array();
    bool interp_ok = true;
    for (double alpha : {2.0, 2.25, 2.5}) {
        const double lhs = std::pow(hs_norm(u, alpha - 1.0), 2);
        const double rhs = hs_norm(u, alpha - 2.0) * hs_norm(u, alpha);
        const double margin = rhs * (1.0 + 1e-12) - lhs;
        interp_ok = interp_ok && margin >= 0.0;
        interp.push_back({{"alpha", alpha}, {"margin", margin}, {"pass", margin >= 0.0}});
    }
    j["checks"] = {{"interpolation", interp},
                   {"interpolation_pass", interp_ok},
                   {"band_bound_margin", band_margin},
                   {"band_bound_pass", band_ok}};
    return j;
}

}  // namespace eigenflow
