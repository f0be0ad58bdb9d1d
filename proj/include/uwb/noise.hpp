#pragma once

#include <cstdint>

#include "uwb/waveform.hpp"

namespace uwb {

// Bernoulli-Gaussian impulse noise plus Gaussian background noise.
struct NoiseParams {
    double sigma_n2 = 0.0;  // background noise variance
    double sigma_I2 = 0.0;  // impulse amplitude variance
    double p = 0.0;         // impulse probability per sample

    // total effective noise power
    double effective_power() const { return sigma_n2 + p * sigma_I2; }
};

// SNR = sigma_s^2 / sigma_n^2 and SINR = sigma_s^2 / sigma_I^2, with the
// signal power fixed at one.
struct LinkBudget {
    double snr_db;
    double sinr_db;
};

NoiseParams noise_params_from_budget(const LinkBudget& b, double p);

// i[k] = b[k] * g[k], b ~ Bernoulli(p), g ~ N(0, sigma_I2).
Waveform bg_impulse(std::size_t n, const NoiseParams& params, std::uint64_t seed);

// Impulse realization plus the ground-truth mask of struck samples.
struct ImpulseRealization {
    Waveform noise;
    std::vector<bool> mask;
};
ImpulseRealization bg_impulse_with_mask(std::size_t n, const NoiseParams& params,
                                        std::uint64_t seed);

Waveform awgn_noise(std::size_t n, double sigma_n2, std::uint64_t seed);

}  // namespace uwb
