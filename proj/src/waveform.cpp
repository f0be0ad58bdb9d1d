#include "uwb/waveform.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uwb/rng.hpp"

namespace uwb {

namespace {
constexpr double kPi = 3.14159265358979323846;

// ceil/floor guarded against binary representation error in products like
// 10e-9 * 16e9, which should be exactly 160.
std::size_t robust_ceil(double x) {
    double eps = 1e-9 * std::max(1.0, std::fabs(x));
    return static_cast<std::size_t>(std::ceil(x - eps));
}
long robust_floor(double x) {
    double eps = 1e-9 * std::max(1.0, std::fabs(x));
    return static_cast<long>(std::floor(x + eps));
}
}  // namespace

double energy(const Waveform& w) {
    double e = 0.0;
    for (double v : w.samples) e += v * v;
    return e;
}

double norm2(const Waveform& w) { return std::sqrt(energy(w)); }

std::size_t frame_samples(const FrameConfig& cfg) {
    if (cfg.frame_duration <= 0 || cfg.sample_rate <= 0)
        throw std::invalid_argument("frame duration and sample rate must be positive");
    return robust_ceil(cfg.frame_duration * cfg.sample_rate);
}

Waveform generate_pulse(const PulseParams& params) {
    if (params.tau <= 0) throw std::invalid_argument("pulse tau must be positive");
    if (params.sample_rate <= 0) throw std::invalid_argument("sample rate must be positive");
    if (params.support_half_width < params.tau)
        throw std::invalid_argument("pulse support narrower than tau");

    const long half = robust_floor(params.support_half_width * params.sample_rate);
    if (half < 1) throw std::invalid_argument("pulse support below one sample");

    Waveform w;
    w.sample_rate = params.sample_rate;
    w.samples.resize(static_cast<std::size_t>(2 * half + 1));
    for (long k = -half; k <= half; ++k) {
        const double u = static_cast<double>(k) / params.sample_rate / params.tau;
        const double u2 = u * u;
        w.samples[static_cast<std::size_t>(k + half)] =
            (1.0 - 4.0 * kPi * u2) * std::exp(-2.0 * kPi * u2);
    }
    const double n = norm2(w);
    for (double& v : w.samples) v /= n;
    return w;
}

std::size_t effective_support(const Waveform& w, double energy_tail) {
    if (w.samples.empty()) throw std::invalid_argument("empty waveform");
    const double total = energy(w);
    if (total <= 0) throw std::invalid_argument("zero-energy waveform");
    const std::size_t c = w.size() / 2;
    double inside = w[c] * w[c];
    std::size_t k = 0;
    while (total - inside > energy_tail * total) {
        ++k;
        if (c + k >= w.size() && c < k) break;
        if (c + k < w.size()) inside += w[c + k] * w[c + k];
        if (c >= k) inside += w[c - k] * w[c - k];
    }
    return std::min<std::size_t>(2 * k + 1, w.size());
}

PeakStats pulse_peak_stats(const Waveform& w) {
    if (w.samples.empty()) throw std::invalid_argument("empty waveform");
    std::size_t im = 0;
    double pm = std::fabs(w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) {
        const double a = std::fabs(w[k]);
        if (a > pm) {
            pm = a;
            im = k;
        }
    }
    if (w.size() < 2) throw std::invalid_argument("single-sample waveform has no neighbor");
    // Left-neighbor difference; at the left edge the symmetric alternative
    // (right neighbor) applies.
    const double diff = (im > 0) ? std::fabs(w[im] - w[im - 1])
                                 : std::fabs(w[im] - w[im + 1]);
    return PeakStats{pm, im, diff};
}

ThCode generate_th_code(std::size_t n_frames, int cardinality, std::uint64_t seed) {
    if (n_frames < 1) throw std::invalid_argument("need at least one frame");
    if (cardinality < 1) throw std::invalid_argument("cardinality must be >= 1");
    ThCode code;
    code.chip_indices.resize(n_frames);
    auto eng = make_engine(seed);
    std::uniform_int_distribution<int> dist(0, cardinality - 1);
    for (auto& c : code.chip_indices) c = dist(eng);
    return code;
}

Waveform modulate_frame(int bit, int chip_index, const FrameConfig& cfg,
                        const Waveform& w) {
    if (bit != 1 && bit != -1) throw std::invalid_argument("bit must be +1 or -1");
    if (chip_index < 0 || chip_index >= cfg.th_cardinality)
        throw std::invalid_argument("chip index out of range");

    const std::size_t omega = frame_samples(cfg);
    const long off = robust_floor(static_cast<double>(chip_index) *
                                  cfg.chip_duration * cfg.sample_rate);
    if (off < 0 || static_cast<std::size_t>(off) + w.size() > omega)
        throw std::invalid_argument("pulse spills over the frame boundary");

    Waveform frame;
    frame.sample_rate = cfg.sample_rate;
    frame.samples.assign(omega, 0.0);
    for (std::size_t k = 0; k < w.size(); ++k)
        frame.samples[static_cast<std::size_t>(off) + k] = bit * w[k];
    return frame;
}

}  // namespace uwb
