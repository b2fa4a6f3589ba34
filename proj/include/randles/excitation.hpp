#pragma once

#include <utility>
#include <vector>

#include "randles/error.hpp"
#include "randles/simulate_types.hpp"

namespace randles {

/// One multisine component: u_j(t) = magnitude * cos(omega * t + phase).
struct SineComponent {
    double magnitude = 0.0;  // A
    double omega = 0.0;      // rad/s
    double phase = 0.0;      // rad, wrapped to [-pi, pi)
};

/// Multisine test signal u(t) = sum_j m_j cos(w_j t + phi_j) + dc_offset.
/// Frequencies strictly increasing, magnitudes positive.
struct MultiSineSpec {
    std::vector<SineComponent> components;
    double dc_offset = 0.0;

    int tone_count() const { return static_cast<int>(components.size()); }
};

struct ExcitationReport {
    int pe_order = 0;        // number of nonzero spectral lines = 2l
    int required_order = 0;  // 2n+3 for an order-n circuit
    bool pass = false;
    double crest_factor = 0.0;  // filled by callers that sample the signal
    std::vector<std::pair<double, double>> spectral_lines;  // (omega, weight)
};

/// Wraps an angle into [-pi, pi).
double wrap_phase(double phi);

/// Schroeder phase sequence for equal-magnitude multisines:
/// phi_j = phi_1 - pi*j*(j-1)/l, wrapped.
std::vector<double> schroeder_phases(int l, double phi1);

enum class Spacing { Linear, Log };

/// l tones spread over [f_min, f_max] Hz inclusive (linear or geometric),
/// equal magnitudes, Schroeder phases seeded by phi1.
MultiSineSpec build_multisine(int l, double magnitude, double f_min_hz, double f_max_hz,
                              Spacing spacing, double phi1);

void validate(const MultiSineSpec& spec);

/// Uniform samples u(k/fs), k = 0..floor(duration*fs)-1, plus dc_offset.
/// Throws Errc::NyquistViolation unless fs > 2*max frequency. Parallel
/// kernel; sample_serial is the reference implementation.
TimeSeries sample(const MultiSineSpec& spec, double fs, double duration);
TimeSeries sample_serial(const MultiSineSpec& spec, double fs, double duration);

/// max |x_k| / RMS(x). Throws Errc::ZeroSignal on empty or all-zero input.
double crest_factor(const TimeSeries& x);

/// Persistent-excitation check: required order is the monic-TF coefficient
/// count 2n+3 (numerator n+2 plus non-monic denominator n+1, the pinned
/// d_0 = 0 still counted); provided order is 2l. crest_factor is left 0.
ExcitationReport check_pe_order(const MultiSineSpec& spec, int n);

}  // namespace randles
