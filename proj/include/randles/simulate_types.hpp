#pragma once

#include <cstdint>
#include <vector>

namespace randles {

enum class Channel { Current, Voltage };

/// Uniformly sampled record: values[k] is the sample at t0 + k*dt.
struct TimeSeries {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;
    Channel channel = Channel::Current;

    std::size_t size() const { return values.size(); }
};

/// Additive iid Gaussian measurement noise.
struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

}  // namespace randles
