#include "randles/montecarlo.hpp"

#include <algorithm>
#include <cmath>

namespace randles {

std::vector<double> flatten_params(const CircuitParams& params) {
    std::vector<double> flat;
    flat.reserve(2 * params.r.size() + 2);
    flat.push_back(params.r_inf);
    flat.insert(flat.end(), params.r.begin(), params.r.end());
    flat.insert(flat.end(), params.c.begin(), params.c.end());
    flat.push_back(params.c_w);
    return flat;
}

std::vector<std::string> param_names(int n) {
    if (n < 0) fail(Errc::InvalidParams, "negative order");
    std::vector<std::string> names;
    names.reserve(2 * static_cast<std::size_t>(n) + 2);
    names.emplace_back("r_inf");
    for (int i = 1; i <= n; ++i) names.push_back("r" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("c" + std::to_string(i));
    names.emplace_back("c_w");
    return names;
}

namespace {

std::vector<const CircuitParams*> accepted_params(const std::vector<TrialResult>& results,
                                                  std::size_t expected_size) {
    std::vector<const CircuitParams*> accepted;
    for (const auto& trial : results) {
        if (!trial.accepted) continue;
        if (!trial.params) fail(Errc::InvalidParams, "accepted trial without parameters");
        if (flatten_params(*trial.params).size() != expected_size)
            fail(Errc::InvalidParams, "mixed parameter orders in one result list");
        accepted.push_back(&*trial.params);
    }
    if (accepted.empty()) fail(Errc::NoAcceptedTrials, "no accepted trials to aggregate");
    return accepted;
}

}  // namespace

StudyStats summarize(const std::vector<TrialResult>& results, const CircuitParams& truth) {
    validate(truth);
    std::vector<double> truth_flat = flatten_params(truth);
    std::vector<const CircuitParams*> accepted = accepted_params(results, truth_flat.size());

    std::size_t n_params = truth_flat.size();
    auto n_acc = static_cast<double>(accepted.size());

    StudyStats stats;
    stats.param_names = param_names(truth.order());
    stats.mean.assign(n_params, 0.0);
    stats.std_dev.assign(n_params, 0.0);
    stats.e_r.assign(n_params, 0.0);
    stats.accepted_count = static_cast<int>(accepted.size());
    stats.outlier_count = static_cast<int>(results.size()) - stats.accepted_count;

    for (const auto* params : accepted) {
        std::vector<double> flat = flatten_params(*params);
        for (std::size_t k = 0; k < n_params; ++k) stats.mean[k] += flat[k];
    }
    for (double& m : stats.mean) m /= n_acc;

    if (accepted.size() > 1) {
        for (const auto* params : accepted) {
            std::vector<double> flat = flatten_params(*params);
            for (std::size_t k = 0; k < n_params; ++k) {
                double dev = flat[k] - stats.mean[k];
                stats.std_dev[k] += dev * dev;
            }
        }
        for (double& s : stats.std_dev) s = std::sqrt(s / (n_acc - 1.0));
    }

    for (std::size_t k = 0; k < n_params; ++k)
        stats.e_r[k] = 100.0 * std::abs((truth_flat[k] - stats.mean[k]) / truth_flat[k]);
    return stats;
}

std::vector<std::vector<HistogramRow>> histogram_export(const std::vector<TrialResult>& results,
                                                        int bins) {
    if (bins < 1) fail(Errc::InvalidParams, "need at least one bin");
    std::vector<std::vector<double>> columns;
    for (const auto& trial : results) {
        if (!trial.accepted || !trial.params) continue;
        std::vector<double> flat = flatten_params(*trial.params);
        if (columns.empty()) columns.resize(flat.size());
        if (columns.size() != flat.size())
            fail(Errc::InvalidParams, "mixed parameter orders in one result list");
        for (std::size_t k = 0; k < flat.size(); ++k) columns[k].push_back(flat[k]);
    }
    if (columns.empty()) fail(Errc::NoAcceptedTrials, "no accepted trials to bin");

    std::vector<std::vector<HistogramRow>> tables(columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
        auto [lo_it, hi_it] = std::minmax_element(columns[k].begin(), columns[k].end());
        double lo = *lo_it, hi = *hi_it;
        double width = (hi - lo) / bins;
        auto& table = tables[k];
        table.resize(bins);
        for (int b = 0; b < bins; ++b) {
            table[b].bin_low = lo + b * width;
            table[b].bin_high = b + 1 == bins ? hi : lo + (b + 1) * width;
        }
        for (double v : columns[k]) {
            int b = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
            b = std::clamp(b, 0, bins - 1);
            ++table[b].count;
        }
    }
    return tables;
}

StudyOutput run_study(const StudyConfig& cfg) {
    validate(cfg.truth);
    validate(cfg.excitation);
    if (cfg.trials < 1) fail(Errc::ConfigError, "trials must be at least 1");
    int n = cfg.truth.order();
    if (n < 1) fail(Errc::ConfigError, "the study needs at least one RC pair");
    if (cfg.fit.order_n != n) fail(Errc::ConfigError, "fit order must match the truth's order");
    if (cfg.noise && (!(cfg.noise->sigma >= 0.0) || !std::isfinite(cfg.noise->sigma)))
        fail(Errc::ConfigError, "noise sigma must be nonnegative");
    if (!check_pe_order(cfg.excitation, n).pass)
        fail(Errc::RankDeficient, "excitation order below the identifiability requirement");

    TimeSeries u = sample(cfg.excitation, cfg.fs, cfg.duration);
    TimeSeries y_clean = simulate_response(to_state_space(to_modal(cfg.truth)), u);
    TimeSeries u_detrended = detrend(u);

    FitConfig base = cfg.fit;
    if (base.freqs.empty())
        for (const auto& component : cfg.excitation.components)
            base.freqs.push_back(component.omega);

    // configuration-level failures surface here, not inside the trial loop
    dft_at_tones(u_detrended, base.freqs);

    bool redraw_noise = cfg.noise && cfg.noise->sigma > 0.0;
    StudyOutput out;
    out.trials.resize(cfg.trials);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cfg.trials; ++i) {
        FitConfig trial_cfg = base;
        trial_cfg.init_seed = base.init_seed + static_cast<std::uint64_t>(i);
        try {
            TimeSeries y = y_clean;
            if (redraw_noise) {
                NoiseSpec trial_noise = *cfg.noise;
                trial_noise.seed += static_cast<std::uint64_t>(i);
                y = add_noise(y_clean, trial_noise);
            }
            TrialResult trial = fit_tf(u_detrended, detrend(y), trial_cfg);
            if (trial.reject == RejectReason::None) {
                TrialResult recovery = recover_params(trial.tf, n, cfg.outliers);
                trial.params = std::move(recovery.params);
                trial.reject = recovery.reject;
                trial.accepted = recovery.accepted;
            }
            out.trials[i] = std::move(trial);
        } catch (const Error& e) {
            TrialResult trial;
            trial.seed = trial_cfg.init_seed;
            trial.reject = e.code() == Errc::SingularSystem ? RejectReason::SingularSystem
                                                            : RejectReason::NonPhysical;
            out.trials[i] = std::move(trial);
        }
    }

    out.stats = summarize(out.trials, cfg.truth);
    return out;
}

}  // namespace randles
