#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uwb/channel.hpp"
#include "uwb/waveform.hpp"

namespace uwb {

struct CdaParams {
    double mu;                  // amplitude-difference threshold
    std::size_t max_iterations; // hard safety cap, defaults to frame length

    static CdaParams from_mu(double mu, std::size_t max_iterations = 0);
    // mu = kappa * |w(peak) - w(peak-1)|; kappa outside [2,3] warns once.
    static CdaParams from_kappa(const Waveform& w, double kappa,
                                std::size_t max_iterations = 0);
};

// kappa * |w(I_max) - w(I_max - 1)|
double select_mu(const Waveform& w, double kappa);

struct CdaDiagnostics {
    std::size_t iterations = 0;            // number of zeroed samples
    std::vector<double> norm_trace;        // ||r_i||_2, starting at ||r_0||_2
    std::vector<std::size_t> zeroed_indices;
    bool hit_iteration_cap = false;
    // Filled when ground truth is supplied:
    std::optional<double> residual_distance;  // ||r_final - s||_2
    std::vector<double> mse_trace;            // per-iteration ||r_i - s||^2 / N
};

// Iteratively zero the max-|.| sample while its difference from the right
// neighbor is >= mu; stop at the first peak that looks cluster-shaped.
// When the max falls on the last sample the left neighbor is used instead
// (the pulse-symmetric form of the test). Ties in the max search resolve
// to the lowest index.
std::pair<Waveform, CdaDiagnostics> cda(const Waveform& r, const CdaParams& params,
                                        const Waveform* ground_truth = nullptr);

struct BlankingParams {
    double threshold;  // T > 0
};

// y[k] = 0 where |r[k]| >= T, else r[k].
Waveform blank(const Waveform& r, const BlankingParams& params);

// Perfect-CSI template: phi = h * modulate(+1, chip).
Waveform make_template(const Waveform& w, const ChannelRealization& h,
                       int chip_index, const FrameConfig& cfg);

// Inner product <x, phi>.
double correlate(const Waveform& x, const Waveform& phi);

// sign(zeta); zero resolves to +1.
int detect(double zeta);

}  // namespace uwb
