#include "uwb/receiver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace uwb {

double select_mu(const Waveform& w, double kappa) {
    if (w.size() < 2)
        throw std::invalid_argument("degenerate single-sample pulse");
    if (kappa < 2.0 || kappa > 3.0)
        std::fprintf(stderr, "warning: kappa=%g outside the empirical range [2,3]\n", kappa);
    return kappa * pulse_peak_stats(w).adjacent_diff;
}

CdaParams CdaParams::from_mu(double mu, std::size_t max_iterations) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    return CdaParams{mu, max_iterations};
}

CdaParams CdaParams::from_kappa(const Waveform& w, double kappa,
                                std::size_t max_iterations) {
    return from_mu(select_mu(w, kappa), max_iterations);
}

std::pair<Waveform, CdaDiagnostics> cda(const Waveform& r, const CdaParams& params,
                                        const Waveform* ground_truth) {
    if (r.samples.empty()) throw std::invalid_argument("empty waveform");
    if (!(params.mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (ground_truth && ground_truth->size() != r.size())
        throw std::invalid_argument("ground truth length mismatch");

    Waveform s = r;
    CdaDiagnostics diag;
    const std::size_t n = s.size();
    const std::size_t cap = params.max_iterations ? params.max_iterations : n;

    double norm_sq = 0.0;
    for (double v : s.samples) norm_sq += v * v;
    diag.norm_trace.push_back(std::sqrt(norm_sq));

    double resid_sq = 0.0;
    if (ground_truth) {
        for (std::size_t k = 0; k < n; ++k) {
            const double d = s[k] - (*ground_truth)[k];
            resid_sq += d * d;
        }
        diag.mse_trace.push_back(resid_sq / static_cast<double>(n));
    }

    for (;;) {
        std::size_t im = 0;
        double pm = std::fabs(s[0]);
        for (std::size_t k = 1; k < n; ++k) {
            const double a = std::fabs(s[k]);
            if (a > pm) {
                pm = a;
                im = k;
            }
        }
        // Right-neighbor comparison; at the right edge the symmetric
        // left-neighbor form applies.
        const std::size_t j = (im + 1 < n) ? im + 1 : im - 1;
        if (n == 1 || std::fabs(s[im] - s[j]) < params.mu) break;  // cluster-shaped peak
        if (diag.iterations >= cap) {
            diag.hit_iteration_cap = true;
            break;
        }
        if (ground_truth) {
            const double old_d = s[im] - (*ground_truth)[im];
            const double new_d = (*ground_truth)[im];
            resid_sq += new_d * new_d - old_d * old_d;
        }
        norm_sq -= s[im] * s[im];
        s.samples[im] = 0.0;
        ++diag.iterations;
        diag.zeroed_indices.push_back(im);
        diag.norm_trace.push_back(std::sqrt(std::max(0.0, norm_sq)));
        if (ground_truth)
            diag.mse_trace.push_back(std::max(0.0, resid_sq) / static_cast<double>(n));
    }

    if (ground_truth) diag.residual_distance = std::sqrt(std::max(0.0, resid_sq));
    return {std::move(s), std::move(diag)};
}

Waveform blank(const Waveform& r, const BlankingParams& params) {
    if (!(params.threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
    Waveform y = r;
    for (double& v : y.samples)
        if (std::fabs(v) >= params.threshold) v = 0.0;
    return y;
}

Waveform make_template(const Waveform& w, const ChannelRealization& h,
                       int chip_index, const FrameConfig& cfg) {
    return propagate(modulate_frame(+1, chip_index, cfg, w), h);
}

double correlate(const Waveform& x, const Waveform& phi) {
    if (x.size() != phi.size()) throw std::invalid_argument("length mismatch");
    double z = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) z += x[k] * phi[k];
    return z;
}

int detect(double zeta) { return zeta >= 0.0 ? +1 : -1; }

}  // namespace uwb
