#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randles/circuit.hpp"
#include "randles/simulate_types.hpp"

namespace randles {

/// Configuration for the frequency-domain transfer-function fit.
struct FitConfig {
    int order_n = 0;
    int max_iter = 200;
    std::uint64_t init_seed = 0;
    /// Decade bounds for the random log-uniform pole initialization.
    std::pair<double, double> init_log_range{-2.0, 3.0};
    /// Decade bounds for the random log-uniform residue (b_i, b_w, d)
    /// initialization.
    std::pair<double, double> init_residue_log_range{-4.0, 2.0};
    double convergence_tol = 1e-12;
    /// Fit frequencies in rad/s; defaults to the excitation tone frequencies.
    std::vector<double> freqs;
    /// When set, skips the random draw and starts Levenberg iteration here.
    std::optional<RationalTF> init_tf;
};

/// Rejection thresholds for recovered parameters.
struct OutlierPolicy {
    double c_w_max = 1000.0;
    double c_i_max = 10.0;
    bool require_real_positive_poles = true;
};

enum class RejectReason {
    None,
    NoConvergence,
    ComplexPoles,
    NegativePoles,
    NonPhysical,
    CwBound,
    CiBound,
    SingularSystem,
};

const char* reject_reason_name(RejectReason reason);

/// One estimation outcome: the fitted TF stage plus, when recovery succeeds
/// and passes the outlier policy, the recovered circuit parameters.
struct TrialResult {
    std::optional<CircuitParams> params;
    RejectReason reject = RejectReason::None;
    RationalTF tf;
    double residual = 0.0;
    RationalTF init;
    bool accepted = false;
    std::uint64_t seed = 0;
};

/// Single-frequency correlation (2/N) sum_k x[k] e^{-j w k dt} at each
/// frequency. Requires the record to span at least 2 periods of the slowest
/// tone (Errc::TooShortRecord). Fixed-chunk accumulation, bit-identical for
/// any thread count; dft_at_tones_serial is the plain-loop reference.
std::vector<std::complex<double>> dft_at_tones(const TimeSeries& x,
                                               const std::vector<double>& freqs);
std::vector<std::complex<double>> dft_at_tones_serial(const TimeSeries& x,
                                                      const std::vector<double>& freqs);

/// Fits the monic order-(n+1, n+1) rational TF with d_0 pinned to 0 to the
/// empirical frequency response H(jw_q) = Y(jw_q)/U(jw_q) by weighted
/// nonlinear least squares, minimizing sum_q |T(jw_q) - H_q|^2 / |H_q|^2
/// with Levenberg-damped Gauss-Newton over the free coefficients
/// (c_0..c_{n+1}, d_1..d_n).
/// Initialization is a seeded random draw (poles and residues log-uniform
/// over the configured decade ranges) unless cfg.init_tf is set. Fills tf,
/// residual, init and seed; params stay empty (recovery is a separate
/// stage). A fit that stalls or exhausts max_iter is returned with
/// reject = NoConvergence. Throws Errc::RankDeficient when the tone count
/// provides PE order below 2n+3.
TrialResult fit_tf(const TimeSeries& u, const TimeSeries& y, const FitConfig& cfg);

/// Recovery per the generalized fixed-pole procedure: R_inf is the leading
/// numerator coefficient, the denominator roots (one pinned at 0) give the
/// a_i sorted descending, an (n+1)x(n+1) linear solve matching
/// num - d*den = sum_i b_i s prod_{j!=i}(s+a_j) + b_w prod_j(s+a_j)
/// gives the residues, then C_w = 1/b_w, C_i = 1/b_i, R_i = b_i/a_i. The
/// outlier policy rejects complex or nonpositive poles, C_w > c_w_max and
/// C_i > c_i_max; nonpositive d, b_i or b_w reject as NonPhysical. Throws
/// Errc::SingularSystem on pole ties within 1e-9 relative.
TrialResult recover_params(const RationalTF& tf, int n, const OutlierPolicy& policy);

/// The four fixed circuit topologies of the recovery table.
enum class Topology { R_RC, R_RC_C, R_RC_RC, R_RC_RC_C };

/// Per-topology closed-form recovery. The no-integrator topologies R_RC and
/// R_RC_RC have no series capacitor; the returned c_w is +infinity there
/// (the C_w -> inf limit, vanishing series impedance).
CircuitParams recover_params_topology(const RationalTF& tf, Topology topology);

}  // namespace randles
