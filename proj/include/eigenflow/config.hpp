#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eigenflow/exponents.hpp"
#include "eigenflow/grid.hpp"
#include "eigenflow/initial_data.hpp"

namespace eigenflow {

struct CriterionSelection {
    enum class Kind { lebesgue_q, sobolev_alpha };
    Kind kind = Kind::lebesgue_q;
    double value = 0.0;     // the selected q or alpha
    double c_assumed = 1.0; // stand-in constant for the exponential bound display
    CriterionParams params;

    std::string tag() const {
        std::ostringstream os;
        os << (kind == Kind::lebesgue_q ? "q" : "alpha") << value;
        return os.str();
    }
};

struct RunConfig {
    Grid grid{8, 1.0};
    double dt = 0.0;
    double t_end = 0.0;
    int output_every = 1;       // steps between diagnostic records
    int checkpoint_every = 0;   // steps between checkpoints, 0 = none
    double viscosity = 1.0;
    double band_threshold = 1e-13;
    std::string output_dir = "out";
    InitialDataSpec initial_data;
    std::vector<CriterionSelection> criteria;
    std::map<std::string, std::string> entries;  // parsed key=value echo
    std::string source_text;
};

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const RunConfig& cfg) {
    std::ostringstream os;
    for (const auto& [k, v] : cfg.entries) os << k << '=' << v << '\n';
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(os.str())));
    return buf;
}

namespace detail {

struct KeyValue {
    std::string value;
    int line = 0;
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const KeyValue& kv, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(kv.value, &pos);
    } catch (const std::exception&) {
        throw ConfigRangeError(kv.line, "line " + std::to_string(kv.line) + ": key '" + key +
                                            "': cannot parse '" + kv.value + "' as a number");
    }
    if (pos != kv.value.size())
        throw ConfigRangeError(kv.line, "line " + std::to_string(kv.line) + ": key '" + key +
                                            "': trailing junk in '" + kv.value + "'");
    return v;
}

inline long long parse_int(const KeyValue& kv, const std::string& key) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(kv.value, &pos);
    } catch (const std::exception&) {
        throw ConfigRangeError(kv.line, "line " + std::to_string(kv.line) + ": key '" + key +
                                            "': cannot parse '" + kv.value + "' as an integer");
    }
    if (pos != kv.value.size())
        throw ConfigRangeError(kv.line, "line " + std::to_string(kv.line) + ": key '" + key +
                                            "': trailing junk in '" + kv.value + "'");
    return v;
}

inline std::vector<double> parse_double_list(const KeyValue& kv, const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(kv.value);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double({item, kv.line}, key));
    }
    return out;
}

}  // namespace detail

// Strict flat key=value parser: '#' starts a comment, unknown keys and
// duplicates are hard errors carrying the line number.
inline RunConfig parse_config(const std::string& text) {
    static const char* known_keys[] = {
        "n", "box_length", "dt", "t_end", "output_every", "checkpoint_every", "viscosity",
        "band_threshold", "output_dir", "ic_kind", "ic_amplitude", "ic_band_r1", "ic_band_r2",
        "ic_slope", "ic_seed", "ic_k0", "ic_polarization", "ic_abc", "ic_file", "criteria_q",
        "criteria_alpha", "c_assumed"};

    std::map<std::string, detail::KeyValue> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigRangeError(lineno, "line " + std::to_string(lineno) +
                                               ": expected key=value, got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        bool known = false;
        for (const char* k : known_keys)
            if (key == k) known = true;
        if (!known)
            throw UnknownKeyError(lineno,
                                  "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (kv.count(key))
            throw ConfigRangeError(lineno, "line " + std::to_string(lineno) + ": duplicate key '" +
                                               key + "' (first at line " +
                                               std::to_string(kv[key].line) + ")");
        kv[key] = {value, lineno};
    }

    auto require = [&](const std::string& key) -> const detail::KeyValue& {
        auto it = kv.find(key);
        if (it == kv.end()) throw MissingKeyError(0, "missing required key '" + key + "'");
        return it->second;
    };
    auto optional = [&](const std::string& key) -> const detail::KeyValue* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    RunConfig cfg;
    cfg.source_text = text;
    for (const auto& [k, v] : kv) cfg.entries[k] = v.value;

    const auto& n_kv = require("n");
    const long long n = detail::parse_int(n_kv, "n");
    double box_length = 1.0;
    if (const auto* b = optional("box_length")) box_length = detail::parse_double(*b, "box_length");
    try {
        cfg.grid = Grid(static_cast<int>(n), box_length);
    } catch (const OutOfRangeError& e) {
        throw ConfigRangeError(n_kv.line,
                               "line " + std::to_string(n_kv.line) + ": " + e.what());
    }

    const auto& dt_kv = require("dt");
    cfg.dt = detail::parse_double(dt_kv, "dt");
    if (!(cfg.dt > 0.0))
        throw ConfigRangeError(dt_kv.line,
                               "line " + std::to_string(dt_kv.line) + ": dt must be positive");

    const auto& te_kv = require("t_end");
    cfg.t_end = detail::parse_double(te_kv, "t_end");
    if (!(cfg.t_end >= 0.0))
        throw ConfigRangeError(te_kv.line,
                               "line " + std::to_string(te_kv.line) + ": t_end must be >= 0");

    if (const auto* v = optional("output_every")) {
        cfg.output_every = static_cast<int>(detail::parse_int(*v, "output_every"));
        if (cfg.output_every < 1)
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": output_every must be >= 1");
    }
    if (const auto* v = optional("checkpoint_every")) {
        cfg.checkpoint_every = static_cast<int>(detail::parse_int(*v, "checkpoint_every"));
        if (cfg.checkpoint_every < 0)
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": checkpoint_every must be >= 0");
    }
    if (const auto* v = optional("viscosity")) {
        cfg.viscosity = detail::parse_double(*v, "viscosity");
        if (!(cfg.viscosity >= 0.0))
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": viscosity must be >= 0");
    }
    if (const auto* v = optional("band_threshold")) {
        cfg.band_threshold = detail::parse_double(*v, "band_threshold");
        if (!(cfg.band_threshold > 0.0) || !(cfg.band_threshold < 1.0))
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": band_threshold must lie in (0,1)");
    }
    if (const auto* v = optional("output_dir")) cfg.output_dir = v->value;

    // initial data
    const auto& kind_kv = require("ic_kind");
    try {
        cfg.initial_data.kind = InitialDataSpec::kind_from_name(kind_kv.value);
    } catch (const OutOfRangeError& e) {
        throw ConfigRangeError(kind_kv.line,
                               "line " + std::to_string(kind_kv.line) + ": " + e.what());
    }
    if (const auto* v = optional("ic_amplitude")) {
        cfg.initial_data.amplitude = detail::parse_double(*v, "ic_amplitude");
        if (!(cfg.initial_data.amplitude > 0.0))
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": ic_amplitude must be positive");
    }
    if (const auto* v = optional("ic_band_r1"))
        cfg.initial_data.band_r1 = detail::parse_double(*v, "ic_band_r1");
    if (const auto* v = optional("ic_band_r2"))
        cfg.initial_data.band_r2 = detail::parse_double(*v, "ic_band_r2");
    if (const auto* v = optional("ic_slope"))
        cfg.initial_data.spectral_slope = detail::parse_double(*v, "ic_slope");
    if (const auto* v = optional("ic_seed"))
        cfg.initial_data.seed = static_cast<std::uint64_t>(detail::parse_int(*v, "ic_seed"));
    if (const auto* v = optional("ic_file")) cfg.initial_data.file = v->value;
    if (const auto* v = optional("ic_k0")) {
        const auto vals = detail::parse_double_list(*v, "ic_k0");
        if (vals.size() != 3)
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": ic_k0 needs three integers");
        for (int i = 0; i < 3; ++i) cfg.initial_data.k0[i] = static_cast<int>(vals[i]);
    }
    if (const auto* v = optional("ic_polarization")) {
        const auto vals = detail::parse_double_list(*v, "ic_polarization");
        if (vals.size() != 3)
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": ic_polarization needs three values");
        for (int i = 0; i < 3; ++i) cfg.initial_data.polarization[i] = vals[i];
    }
    if (const auto* v = optional("ic_abc")) {
        const auto vals = detail::parse_double_list(*v, "ic_abc");
        if (vals.size() != 3)
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": ic_abc needs three values");
        for (int i = 0; i < 3; ++i) cfg.initial_data.abc[i] = vals[i];
    }
    if (cfg.initial_data.kind == InitialDataSpec::Kind::random_band) {
        const auto* r1 = optional("ic_band_r1");
        const auto* r2 = optional("ic_band_r2");
        if (!r1 || !r2) throw MissingKeyError(0, "random_band needs ic_band_r1 and ic_band_r2");
        if (!(cfg.initial_data.band_r1 > 0.0) ||
            !(cfg.initial_data.band_r1 <= cfg.initial_data.band_r2))
            throw ConfigRangeError(r1->line, "line " + std::to_string(r1->line) +
                                                 ": need 0 < ic_band_r1 <= ic_band_r2");
        const double rmax = cfg.grid.n / (3.0 * cfg.grid.box_length);
        if (cfg.initial_data.band_r2 > rmax + 1e-12)
            throw ConfigRangeError(r2->line, "line " + std::to_string(r2->line) +
                                                 ": ic_band_r2 must be <= n/(3L) = " +
                                                 std::to_string(rmax));
    }
    if (cfg.initial_data.kind == InitialDataSpec::Kind::from_file && cfg.initial_data.file.empty())
        throw MissingKeyError(0, "from_file needs ic_file");

    // criteria selections
    std::vector<CriterionSelection> sel;
    if (const auto* v = optional("criteria_q")) {
        for (double q : detail::parse_double_list(*v, "criteria_q")) {
            CriterionSelection s;
            s.kind = CriterionSelection::Kind::lebesgue_q;
            s.value = q;
            try {
                s.params = criterion_params_from_q(q);
            } catch (const OutOfRangeError&) {
                throw ConfigRangeError(v->line, "line " + std::to_string(v->line) + ": q = " +
                                                    std::to_string(q) +
                                                    " outside the admissible range (6/5, 3]");
            }
            sel.push_back(s);
        }
    }
    if (const auto* v = optional("criteria_alpha")) {
        for (double a : detail::parse_double_list(*v, "criteria_alpha")) {
            CriterionSelection s;
            s.kind = CriterionSelection::Kind::sobolev_alpha;
            s.value = a;
            try {
                s.params = criterion_params_from_alpha(a);
            } catch (const OutOfRangeError&) {
                throw ConfigRangeError(v->line, "line " + std::to_string(v->line) + ": alpha = " +
                                                    std::to_string(a) +
                                                    " outside the admissible range [2, 5/2]");
            }
            sel.push_back(s);
        }
    }
    if (const auto* v = optional("c_assumed")) {
        const auto cs = detail::parse_double_list(*v, "c_assumed");
        if (cs.size() == 1) {
            for (auto& s : sel) s.c_assumed = cs[0];
        } else if (cs.size() == sel.size()) {
            for (std::size_t i = 0; i < sel.size(); ++i) sel[i].c_assumed = cs[i];
        } else {
            throw ConfigRangeError(v->line, "line " + std::to_string(v->line) +
                                                ": c_assumed needs one value or one per criterion");
        }
    }
    cfg.criteria = std::move(sel);
    return cfg;
}

// Generator spec for the gen-ic command: the initial-data subset of the run
// config (grid plus ic_* keys), same syntax and strictness.
struct GeneratorSpec {
    Grid grid{8, 1.0};
    InitialDataSpec initial_data;
};

inline GeneratorSpec parse_generator_spec(const std::string& text) {
    // reuse the strict run-config parser, then reject non-generator keys with
    // their own line numbers
    std::map<std::string, int> lines;
    {
        std::istringstream is(text);
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = detail::trim(line.substr(0, eq));
            if (!key.empty() && !lines.count(key)) lines[key] = lineno;
        }
    }
    for (const auto& [k, line] : lines) {
        const bool ok = k == "n" || k == "box_length" || k.rfind("ic_", 0) == 0;
        if (!ok)
            throw UnknownKeyError(line, "line " + std::to_string(line) + ": key '" + k +
                                            "' is not a generator key");
    }
    // appended keys keep the user's line numbers intact in range errors
    const RunConfig cfg = parse_config(text + "\ndt = 1\nt_end = 0\n");
    return {cfg.grid, cfg.initial_data};
}

}  // namespace eigenflow
