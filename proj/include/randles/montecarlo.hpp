#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randles/estimate.hpp"
#include "randles/excitation.hpp"
#include "randles/simulate.hpp"

namespace randles {

/// Full description of a repeated-trial estimation study. The input record
/// is fixed; noise (when set) is redrawn per trial with seed noise.seed +
/// trial index, and the fit initialization uses fit.init_seed + trial index.
struct StudyConfig {
    CircuitParams truth;
    MultiSineSpec excitation;
    double fs = 0.0;
    double duration = 0.0;
    std::optional<NoiseSpec> noise;
    int trials = 1;
    FitConfig fit;
    OutlierPolicy outliers;
};

/// Aggregate statistics over accepted trials. Per-parameter vectors follow
/// the flattened order (r_inf, r_1..r_n, c_1..c_n, c_w).
struct StudyStats {
    std::vector<std::string> param_names;
    std::vector<double> mean;
    std::vector<double> std_dev;  // sample std, divisor N-1; 0 for a single trial
    std::vector<double> e_r;      // 100*|true - mean|/|true|
    int accepted_count = 0;
    int outlier_count = 0;
};

struct StudyOutput {
    StudyStats stats;
    std::vector<TrialResult> trials;
};

/// Simulates the configured record once, runs `trials` independent fits with
/// per-trial seeds (concurrently; aggregation follows trial index order),
/// filters through the outlier policy and summarizes the accepted results.
/// Individual trial failures never abort the study.
StudyOutput run_study(const StudyConfig& cfg);

/// Mean, sample std (divisor N-1, 0 by convention for a single result) and
/// relative mean error e_r = 100*|true - mean|/|true| per parameter over the
/// accepted results only. Throws Errc::NoAcceptedTrials when none are.
StudyStats summarize(const std::vector<TrialResult>& results, const CircuitParams& truth);

struct HistogramRow {
    double bin_low = 0.0;
    double bin_high = 0.0;
    int count = 0;
};

/// Equal-width histogram over [min, max] per parameter, accepted results
/// only. Throws Errc::NoAcceptedTrials when none are.
std::vector<std::vector<HistogramRow>> histogram_export(const std::vector<TrialResult>& results,
                                                        int bins);

/// Flattened parameter vector (r_inf, r_1.., c_1.., c_w) and matching names.
std::vector<double> flatten_params(const CircuitParams& params);
std::vector<std::string> param_names(int n);

}  // namespace randles
