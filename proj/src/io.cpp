#include "randles/io.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>

namespace randles {

using nlohmann::ordered_json;

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::IoError, "cannot open " + path + " for writing");
    return out;
}

void check_grids(const TimeSeries& u, const TimeSeries& y) {
    if (u.values.size() != y.values.size() || u.dt != y.dt || u.t0 != y.t0)
        fail(Errc::InvalidParams, "u and y records must share one grid");
}

double require_number(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        fail(Errc::ConfigError, std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

std::vector<double> require_array(const ordered_json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        fail(Errc::ConfigError, std::string("missing array field '") + key + "'");
    std::vector<double> values;
    for (const auto& v : j[key]) {
        if (!v.is_number()) fail(Errc::ConfigError, std::string("non-numeric entry in '") + key + "'");
        values.push_back(v.get<double>());
    }
    return values;
}

}  // namespace

void write_csv_tu(const std::string& path, const TimeSeries& u) {
    std::ofstream out = open_out(path);
    out << "t,u\n";
    for (std::size_t k = 0; k < u.values.size(); ++k)
        out << format_double(u.t0 + static_cast<double>(k) * u.dt) << ','
            << format_double(u.values[k]) << '\n';
    if (!out) fail(Errc::IoError, "short write to " + path);
}

void write_csv_tuy(const std::string& path, const TimeSeries& u, const TimeSeries& y) {
    check_grids(u, y);
    std::ofstream out = open_out(path);
    out << "t,u,y\n";
    for (std::size_t k = 0; k < u.values.size(); ++k)
        out << format_double(u.t0 + static_cast<double>(k) * u.dt) << ','
            << format_double(u.values[k]) << ',' << format_double(y.values[k]) << '\n';
    if (!out) fail(Errc::IoError, "short write to " + path);
}

ordered_json to_json(const CircuitParams& params) {
    return ordered_json{{"r_inf", params.r_inf},
                        {"r", params.r},
                        {"c", params.c},
                        {"c_w", params.c_w}};
}

ordered_json to_json(const RationalTF& tf) {
    return ordered_json{{"num", tf.num},
                        {"den", tf.den},
                        {"integrator_fixed", tf.integrator_fixed}};
}

ordered_json to_json(const ExcitationReport& report) {
    ordered_json lines = ordered_json::array();
    for (const auto& [omega, weight] : report.spectral_lines)
        lines.push_back(ordered_json::array({omega, weight}));
    return ordered_json{{"pe_order", report.pe_order},
                        {"required_order", report.required_order},
                        {"pass", report.pass},
                        {"crest_factor", report.crest_factor},
                        {"spectral_lines", lines}};
}

ordered_json to_json(const TrialResult& trial) {
    ordered_json j{{"accepted", trial.accepted},
                   {"reject_reason", reject_reason_name(trial.reject)},
                   {"params", nullptr},
                   {"tf", to_json(trial.tf)},
                   {"residual", trial.residual},
                   {"seed", trial.seed}};
    if (trial.params) j["params"] = to_json(*trial.params);
    return j;
}

ordered_json to_json(const StudyStats& stats, const CircuitParams& truth) {
    return ordered_json{{"truth", to_json(truth)},
                        {"param_names", stats.param_names},
                        {"mean", stats.mean},
                        {"std_dev", stats.std_dev},
                        {"e_r", stats.e_r},
                        {"accepted_count", stats.accepted_count},
                        {"outlier_count", stats.outlier_count}};
}

CircuitParams circuit_params_from_json(const ordered_json& j) {
    CircuitParams params;
    params.r_inf = require_number(j, "r_inf");
    params.r = require_array(j, "r");
    params.c = require_array(j, "c");
    params.c_w = require_number(j, "c_w");
    try {
        validate(params);
    } catch (const Error& e) {
        fail(Errc::ConfigError, e.what());
    }
    return params;
}

RationalTF rational_tf_from_json(const ordered_json& j) {
    RationalTF tf;
    tf.num = require_array(j, "num");
    tf.den = require_array(j, "den");
    tf.integrator_fixed = !tf.den.empty() && tf.den[0] == 0.0;
    if (j.contains("integrator_fixed")) tf.integrator_fixed = j["integrator_fixed"].get<bool>();
    return tf;
}

MultiSineSpec multisine_from_json(const ordered_json& j) {
    MultiSineSpec spec;
    if (j.contains("components")) {
        for (const auto& c : j["components"]) {
            SineComponent component;
            component.magnitude = require_number(c, "magnitude");
            component.omega = c.contains("omega")
                                  ? require_number(c, "omega")
                                  : 2.0 * std::numbers::pi * require_number(c, "freq_hz");
            component.phase = require_number(c, "phase");
            spec.components.push_back(component);
        }
    } else if (j.contains("freqs_hz")) {
        std::vector<double> freqs = require_array(j, "freqs_hz");
        double magnitude = require_number(j, "magnitude");
        std::vector<double> phases =
            schroeder_phases(static_cast<int>(freqs.size()), require_number(j, "phi1"));
        for (std::size_t i = 0; i < freqs.size(); ++i)
            spec.components.push_back(
                {magnitude, 2.0 * std::numbers::pi * freqs[i], phases[i]});
    } else {
        Spacing spacing = Spacing::Linear;
        if (j.contains("spacing")) {
            std::string name = j["spacing"].get<std::string>();
            if (name == "log")
                spacing = Spacing::Log;
            else if (name != "linear")
                fail(Errc::ConfigError, "spacing must be 'linear' or 'log'");
        }
        spec = build_multisine(static_cast<int>(require_number(j, "l")),
                               require_number(j, "magnitude"), require_number(j, "f_min_hz"),
                               require_number(j, "f_max_hz"), spacing, require_number(j, "phi1"));
    }
    if (j.contains("dc_offset")) spec.dc_offset = j["dc_offset"].get<double>();
    try {
        validate(spec);
    } catch (const Error& e) {
        fail(Errc::ConfigError, e.what());
    }
    return spec;
}

StudyConfig study_config_from_json(const ordered_json& j,
                                   std::optional<std::uint64_t> seed_override) {
    StudyConfig cfg;
    if (!j.contains("truth") || !j.contains("excitation"))
        fail(Errc::ConfigError, "study config needs 'truth' and 'excitation'");
    cfg.truth = circuit_params_from_json(j["truth"]);
    cfg.excitation = multisine_from_json(j["excitation"]);
    cfg.fs = require_number(j, "fs");
    cfg.duration = require_number(j, "duration");
    cfg.trials = static_cast<int>(require_number(j, "trials"));

    std::uint64_t master = 0;
    if (j.contains("seed")) master = j["seed"].get<std::uint64_t>();
    if (seed_override) master = *seed_override;

    if (j.contains("noise") && !j["noise"].is_null()) {
        NoiseSpec noise;
        noise.sigma = require_number(j["noise"], "sigma");
        noise.seed = master;
        cfg.noise = noise;
    }

    cfg.fit.order_n = cfg.truth.order();
    cfg.fit.init_seed = master + 1000000;
    if (j.contains("fit")) {
        const auto& f = j["fit"];
        if (f.contains("order_n")) cfg.fit.order_n = f["order_n"].get<int>();
        if (f.contains("max_iter")) cfg.fit.max_iter = f["max_iter"].get<int>();
        if (f.contains("convergence_tol"))
            cfg.fit.convergence_tol = f["convergence_tol"].get<double>();
        if (f.contains("init_log_range")) {
            std::vector<double> range = require_array(f, "init_log_range");
            if (range.size() != 2) fail(Errc::ConfigError, "init_log_range needs two entries");
            cfg.fit.init_log_range = {range[0], range[1]};
        }
        if (f.contains("init_residue_log_range")) {
            std::vector<double> range = require_array(f, "init_residue_log_range");
            if (range.size() != 2)
                fail(Errc::ConfigError, "init_residue_log_range needs two entries");
            cfg.fit.init_residue_log_range = {range[0], range[1]};
        }
        if (f.contains("freqs")) cfg.fit.freqs = require_array(f, "freqs");
    }

    if (j.contains("outliers")) {
        const auto& o = j["outliers"];
        if (o.contains("c_w_max")) cfg.outliers.c_w_max = o["c_w_max"].get<double>();
        if (o.contains("c_i_max")) cfg.outliers.c_i_max = o["c_i_max"].get<double>();
        if (o.contains("require_real_positive_poles"))
            cfg.outliers.require_real_positive_poles =
                o["require_real_positive_poles"].get<bool>();
    }
    return cfg;
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open " + path);
    ordered_json j = ordered_json::parse(in, nullptr, false);
    if (j.is_discarded()) fail(Errc::ConfigError, "invalid JSON in " + path);
    return j;
}

void write_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) fail(Errc::IoError, "short write to " + path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
    if (!out) fail(Errc::IoError, "short write to " + path);
}

}  // namespace randles
