#include "randles/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "randles/rng.hpp"

namespace randles {

namespace {

struct StateCoeffs {
    double r;  // per-step decay e^{a_diag dt} (1 for the integrator)
    double g;  // per-step input gain
};

std::vector<StateCoeffs> zoh_coeffs(const StateSpaceModel& ss, double dt) {
    std::vector<StateCoeffs> coeffs(ss.a_diag.size());
    for (std::size_t j = 0; j < ss.a_diag.size(); ++j) {
        double alpha = ss.a_diag[j];
        if (alpha == 0.0) {
            coeffs[j] = {1.0, ss.b_vec[j] * dt};
        } else {
            double r = std::exp(alpha * dt);
            coeffs[j] = {r, ss.b_vec[j] * (r - 1.0) / alpha};
        }
    }
    return coeffs;
}

std::vector<double> initial_state(const StateSpaceModel& ss, const std::vector<double>& x0) {
    if (ss.a_diag.size() != ss.b_vec.size() || ss.a_diag.size() != ss.c_vec.size())
        fail(Errc::InvalidParams, "state-space vector lengths disagree");
    if (x0.empty()) return std::vector<double>(ss.a_diag.size(), 0.0);
    if (x0.size() != ss.a_diag.size())
        fail(Errc::InvalidParams, "x0 length does not match the state dimension");
    return x0;
}

void check_series(const TimeSeries& u) {
    if (u.values.empty()) fail(Errc::InvalidParams, "empty input record");
    if (!(u.dt > 0.0)) fail(Errc::InvalidParams, "dt must be positive");
}

TimeSeries output_like(const TimeSeries& u) {
    TimeSeries y;
    y.t0 = u.t0;
    y.dt = u.dt;
    y.channel = Channel::Voltage;
    y.values.resize(u.values.size());
    return y;
}

constexpr std::size_t kScanBlock = 65536;

}  // namespace

TimeSeries simulate_response_serial(const StateSpaceModel& ss, const TimeSeries& u,
                                    const std::vector<double>& x0) {
    check_series(u);
    std::vector<double> x = initial_state(ss, x0);
    std::vector<StateCoeffs> coef = zoh_coeffs(ss, u.dt);
    TimeSeries y = output_like(u);
    std::size_t n_states = x.size();
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        double uk = u.values[k];
        double acc = ss.d_scalar * uk;
        for (std::size_t j = 0; j < n_states; ++j) acc += ss.c_vec[j] * x[j];
        y.values[k] = acc;
        for (std::size_t j = 0; j < n_states; ++j) x[j] = coef[j].r * x[j] + coef[j].g * uk;
    }
    return y;
}

TimeSeries simulate_response(const StateSpaceModel& ss, const TimeSeries& u,
                             const std::vector<double>& x0) {
    check_series(u);
    std::vector<double> start = initial_state(ss, x0);
    std::vector<StateCoeffs> coef = zoh_coeffs(ss, u.dt);
    TimeSeries y = output_like(u);

    std::size_t count = u.values.size();
    std::size_t n_states = start.size();
    std::size_t n_blocks = (count + kScanBlock - 1) / kScanBlock;

    // local recurrences from a zero state, one chunk per block
    std::vector<double> local(n_blocks * n_states);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < static_cast<std::ptrdiff_t>(n_blocks); ++m) {
        std::size_t lo = static_cast<std::size_t>(m) * kScanBlock;
        std::size_t hi = std::min(lo + kScanBlock, count);
        for (std::size_t j = 0; j < n_states; ++j) {
            double z = 0.0;
            for (std::size_t k = lo; k < hi; ++k) z = coef[j].r * z + coef[j].g * u.values[k];
            local[static_cast<std::size_t>(m) * n_states + j] = z;
        }
    }

    // serial combine across block boundaries
    std::vector<double> boundary((n_blocks + 1) * n_states);
    for (std::size_t j = 0; j < n_states; ++j) boundary[j] = start[j];
    for (std::size_t m = 0; m < n_blocks; ++m) {
        std::size_t lo = m * kScanBlock;
        std::size_t len = std::min(lo + kScanBlock, count) - lo;
        for (std::size_t j = 0; j < n_states; ++j) {
            double decay = std::pow(coef[j].r, static_cast<double>(len));
            boundary[(m + 1) * n_states + j] =
                decay * boundary[m * n_states + j] + local[m * n_states + j];
        }
    }

    // fill each block from its boundary state
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < static_cast<std::ptrdiff_t>(n_blocks); ++m) {
        std::size_t lo = static_cast<std::size_t>(m) * kScanBlock;
        std::size_t hi = std::min(lo + kScanBlock, count);
        std::vector<double> x(boundary.begin() + static_cast<std::ptrdiff_t>(m * n_states),
                              boundary.begin() + static_cast<std::ptrdiff_t>((m + 1) * n_states));
        for (std::size_t k = lo; k < hi; ++k) {
            double uk = u.values[k];
            double acc = ss.d_scalar * uk;
            for (std::size_t j = 0; j < n_states; ++j) acc += ss.c_vec[j] * x[j];
            y.values[k] = acc;
            for (std::size_t j = 0; j < n_states; ++j) x[j] = coef[j].r * x[j] + coef[j].g * uk;
        }
    }
    return y;
}

TimeSeries add_noise(const TimeSeries& y, const NoiseSpec& noise) {
    if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma))
        fail(Errc::InvalidParams, "sigma must be nonnegative");
    TimeSeries out = y;
    if (noise.sigma == 0.0) return out;
    Rng rng(noise.seed);
    for (double& v : out.values) v += rng.normal(noise.sigma);
    return out;
}

TimeSeries detrend(const TimeSeries& x) {
    if (x.values.empty()) fail(Errc::InvalidParams, "empty series");
    double sum = 0.0;
    for (double v : x.values) sum += v;
    double mean = sum / static_cast<double>(x.values.size());
    TimeSeries out = x;
    for (double& v : out.values) v -= mean;
    return out;
}

bool sampling_rate_adequate(double fs, const CircuitParams& params) {
    validate(params);
    if (!(fs > 0.0)) fail(Errc::InvalidParams, "fs must be positive");
    if (params.order() == 0) return true;
    double tau_min = params.r[0] * params.c[0];
    for (int i = 1; i < params.order(); ++i)
        tau_min = std::min(tau_min, params.r[i] * params.c[i]);
    return fs >= 5.0 / tau_min;
}

bool duration_adequate(double duration, const CircuitParams& params) {
    validate(params);
    if (!(duration > 0.0)) fail(Errc::InvalidParams, "duration must be positive");
    double tau_max = params.r_inf * params.c_w;
    for (int i = 0; i < params.order(); ++i)
        tau_max = std::max(tau_max, params.r[i] * params.c[i]);
    return duration >= 6.0 * tau_max;
}

}  // namespace randles
