#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwb/waveform.hpp"

namespace uwb {

// Resolved multipath taps on the sample grid. delays are nondecreasing
// sample offsets with delays[0] == 0; gains are normalized to unit energy.
struct ChannelRealization {
    std::vector<double> gains;
    std::vector<int> delays;

    std::size_t paths() const { return gains.size(); }
    double total_energy() const;
};

// Saleh-Valenzuela style cluster/ray generator, "CM1-like" defaults.
// Rates are per nanosecond, decays in nanoseconds.
struct SvChannelParams {
    double cluster_arrival_rate = 0.047;  // Lambda, 1/ns
    double ray_arrival_rate = 1.54;       // lambda, 1/ns
    double cluster_decay = 22.61;         // Gamma, ns
    double ray_decay = 12.53;             // gamma, ns
    double max_excess_delay = 50.0;       // ns
    double sample_rate = 16e9;            // Hz
};

ChannelRealization awgn_channel();

// Clusters arrive Poisson(Lambda) with the first cluster forced at zero;
// rays within a cluster arrive Poisson(lambda) with the first ray at the
// cluster start. Tap power decays exp(-Tc/Gamma) * exp(-tau/gamma), signs
// are equiprobable, delays quantize to the sample grid (collisions summed),
// and the realization is normalized to unit energy.
ChannelRealization sv_channel(const SvChannelParams& params, std::uint64_t seed);

// y[n] = sum_l gains[l] * x[n - delays[l]], truncated to the frame.
Waveform propagate(const Waveform& x, const ChannelRealization& h);

// One line per tap: delay_ns,gain
std::string channel_to_csv(const ChannelRealization& h, double sample_rate);

}  // namespace uwb
