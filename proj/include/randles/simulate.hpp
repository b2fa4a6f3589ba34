#pragma once

#include "randles/circuit.hpp"
#include "randles/simulate_types.hpp"

namespace randles {

/// Exact zero-order-hold response of the diagonal state-space model to the
/// sampled input u (held constant between samples): for a_i > 0,
///   x_i[k+1] = e^{-a_i dt} x_i[k] + (b_i/a_i)(1 - e^{-a_i dt}) u[k],
/// the integrator state advances by b_w*dt*u[k], and
///   y[k] = sum_i x_i[k] + d*u[k].
/// x0 defaults to the zero state (pass an empty vector). The default kernel
/// uses a fixed-block parallel scan whose output is bit-identical for any
/// thread count; simulate_response_serial is the plain recurrence kept as
/// the reference implementation.
TimeSeries simulate_response(const StateSpaceModel& ss, const TimeSeries& u,
                             const std::vector<double>& x0 = {});
TimeSeries simulate_response_serial(const StateSpaceModel& ss, const TimeSeries& u,
                                    const std::vector<double>& x0 = {});

/// y + e with e iid Gaussian(0, sigma^2) from the seeded portable generator.
TimeSeries add_noise(const TimeSeries& y, const NoiseSpec& noise);

/// Subtracts the sample mean.
TimeSeries detrend(const TimeSeries& x);

/// Sampling-rate diagnostic: fs should be several times 1/tau_min where
/// tau_min = min_i R_i C_i. Returns false (caller should warn) when
/// fs < 5/tau_min.
bool sampling_rate_adequate(double fs, const CircuitParams& params);

/// Duration diagnostic per the 6..8 x tau_max rule, with tau_max taken over
/// the RC pair constants and the series branch constant R_inf*C_w. Returns
/// false when duration < 6*tau_max.
bool duration_adequate(double duration, const CircuitParams& params);

}  // namespace randles
