#include "randles/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace randles {

double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi + std::numbers::pi, two_pi);
    if (r < 0.0) r += two_pi;
    return r - std::numbers::pi;
}

std::vector<double> schroeder_phases(int l, double phi1) {
    if (l < 1) fail(Errc::InvalidParams, "tone count must be at least 1");
    std::vector<double> phases(l);
    for (int j = 1; j <= l; ++j)
        phases[j - 1] = wrap_phase(phi1 - std::numbers::pi * j * (j - 1) / l);
    return phases;
}

MultiSineSpec build_multisine(int l, double magnitude, double f_min_hz, double f_max_hz,
                              Spacing spacing, double phi1) {
    if (l < 2) fail(Errc::InvalidParams, "spacing needs at least 2 tones");
    if (!(magnitude > 0.0) || !std::isfinite(magnitude))
        fail(Errc::InvalidParams, "magnitude must be positive");
    if (!(f_min_hz > 0.0) || !(f_min_hz < f_max_hz) || !std::isfinite(f_max_hz))
        fail(Errc::InvalidBand, "need 0 < f_min < f_max");

    std::vector<double> phases = schroeder_phases(l, phi1);
    MultiSineSpec spec;
    spec.components.resize(l);
    double log_ratio = std::log(f_max_hz / f_min_hz);
    for (int j = 0; j < l; ++j) {
        double frac = static_cast<double>(j) / (l - 1);
        double f = spacing == Spacing::Linear ? f_min_hz + frac * (f_max_hz - f_min_hz)
                                              : f_min_hz * std::exp(frac * log_ratio);
        spec.components[j].magnitude = magnitude;
        spec.components[j].omega = 2.0 * std::numbers::pi * f;
        spec.components[j].phase = phases[j];
    }
    return spec;
}

void validate(const MultiSineSpec& spec) {
    if (spec.components.empty()) fail(Errc::InvalidParams, "empty multisine");
    if (!std::isfinite(spec.dc_offset)) fail(Errc::InvalidParams, "dc_offset not finite");
    double prev = 0.0;
    for (const auto& c : spec.components) {
        if (!(c.magnitude > 0.0) || !std::isfinite(c.magnitude))
            fail(Errc::InvalidParams, "magnitudes must be positive");
        if (!(c.omega > prev) || !std::isfinite(c.omega))
            fail(Errc::InvalidParams, "frequencies must be positive and strictly increasing");
        if (!(c.phase >= -std::numbers::pi) || !(c.phase < std::numbers::pi))
            fail(Errc::InvalidParams, "phases must lie in [-pi, pi)");
        prev = c.omega;
    }
}

namespace {

std::size_t sample_count(const MultiSineSpec& spec, double fs, double duration) {
    validate(spec);
    if (!(fs > 0.0) || !std::isfinite(fs)) fail(Errc::InvalidParams, "fs must be positive");
    // fs > 2 f_max, compared as fs*pi > omega_max to avoid the rounding of
    // omega/(2 pi) at the boundary.
    if (!(fs * std::numbers::pi > spec.components.back().omega))
        fail(Errc::NyquistViolation, "fs must exceed twice the top tone");
    if (!(duration > 0.0) || !std::isfinite(duration))
        fail(Errc::InvalidParams, "duration must be positive");
    auto count = static_cast<std::size_t>(std::floor(duration * fs));
    if (count == 0) fail(Errc::TooShortRecord, "record holds no samples");
    return count;
}

double eval_multisine(const MultiSineSpec& spec, double t) {
    double u = spec.dc_offset;
    for (const auto& c : spec.components) u += c.magnitude * std::cos(c.omega * t + c.phase);
    return u;
}

}  // namespace

TimeSeries sample(const MultiSineSpec& spec, double fs, double duration) {
    std::size_t count = sample_count(spec, fs, duration);
    TimeSeries u;
    u.t0 = 0.0;
    u.dt = 1.0 / fs;
    u.channel = Channel::Current;
    u.values.resize(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k)
        u.values[k] = eval_multisine(spec, static_cast<double>(k) * u.dt);
    return u;
}

TimeSeries sample_serial(const MultiSineSpec& spec, double fs, double duration) {
    std::size_t count = sample_count(spec, fs, duration);
    TimeSeries u;
    u.t0 = 0.0;
    u.dt = 1.0 / fs;
    u.channel = Channel::Current;
    u.values.resize(count);
    for (std::size_t k = 0; k < count; ++k)
        u.values[k] = eval_multisine(spec, static_cast<double>(k) * u.dt);
    return u;
}

double crest_factor(const TimeSeries& x) {
    if (x.values.empty()) fail(Errc::ZeroSignal, "empty series");
    double peak = 0.0, sum_sq = 0.0;
    for (double v : x.values) {
        peak = std::max(peak, std::abs(v));
        sum_sq += v * v;
    }
    if (sum_sq == 0.0) fail(Errc::ZeroSignal, "zero RMS");
    return peak / std::sqrt(sum_sq / static_cast<double>(x.values.size()));
}

ExcitationReport check_pe_order(const MultiSineSpec& spec, int n) {
    validate(spec);
    if (n < 1) fail(Errc::InvalidParams, "order must be at least 1");
    ExcitationReport report;
    int l = spec.tone_count();
    report.pe_order = 2 * l;
    report.required_order = 2 * n + 3;
    report.pass = report.pe_order >= report.required_order;
    report.spectral_lines.reserve(2 * static_cast<std::size_t>(l));
    for (int j = l - 1; j >= 0; --j) {
        const auto& c = spec.components[j];
        report.spectral_lines.emplace_back(-c.omega,
                                           2.0 * std::numbers::pi * c.magnitude * c.magnitude / 4.0);
    }
    for (const auto& c : spec.components)
        report.spectral_lines.emplace_back(c.omega,
                                           2.0 * std::numbers::pi * c.magnitude * c.magnitude / 4.0);
    return report;
}

}  // namespace randles
