#include "uwb/noise.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "uwb/rng.hpp"

namespace uwb {

NoiseParams noise_params_from_budget(const LinkBudget& b, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("impulse probability outside [0,1]");
    NoiseParams n;
    n.sigma_n2 = std::pow(10.0, -b.snr_db / 10.0);
    n.sigma_I2 = std::pow(10.0, -b.sinr_db / 10.0);
    n.p = p;
    if (p > 0.0 && n.sigma_I2 <= n.sigma_n2)
        std::fprintf(stderr,
                     "warning: sigma_I^2 <= sigma_n^2 (%g <= %g); not an impulse regime\n",
                     n.sigma_I2, n.sigma_n2);
    return n;
}

ImpulseRealization bg_impulse_with_mask(std::size_t n, const NoiseParams& params,
                                        std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("length must be >= 1");
    if (params.p < 0.0 || params.p > 1.0)
        throw std::invalid_argument("impulse probability outside [0,1]");
    if (params.sigma_I2 < 0.0) throw std::invalid_argument("negative variance");

    ImpulseRealization out;
    out.noise.samples.assign(n, 0.0);
    out.mask.assign(n, false);
    if (params.p == 0.0 || params.sigma_I2 == 0.0) return out;

    auto eng = make_engine(seed);
    std::bernoulli_distribution hit(params.p);
    std::normal_distribution<double> amp(0.0, std::sqrt(params.sigma_I2));
    for (std::size_t k = 0; k < n; ++k) {
        if (hit(eng)) {
            out.noise.samples[k] = amp(eng);
            out.mask[k] = true;
        }
    }
    return out;
}

Waveform bg_impulse(std::size_t n, const NoiseParams& params, std::uint64_t seed) {
    return bg_impulse_with_mask(n, params, seed).noise;
}

Waveform awgn_noise(std::size_t n, double sigma_n2, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("length must be >= 1");
    if (sigma_n2 < 0.0) throw std::invalid_argument("negative variance");
    Waveform w;
    w.samples.assign(n, 0.0);
    if (sigma_n2 == 0.0) return w;
    auto eng = make_engine(seed);
    std::normal_distribution<double> dist(0.0, std::sqrt(sigma_n2));
    for (double& v : w.samples) v = dist(eng);
    return w;
}

}  // namespace uwb
