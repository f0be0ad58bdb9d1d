#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace uwb {

// Uniformly sampled real-valued baseband signal.
struct Waveform {
    std::vector<double> samples;
    double sample_rate = 0.0;  // Hz

    std::size_t size() const { return samples.size(); }
    double& operator[](std::size_t i) { return samples[i]; }
    double operator[](std::size_t i) const { return samples[i]; }
};

double energy(const Waveform& w);  // ||w||_2^2
double norm2(const Waveform& w);   // ||w||_2

// Second-derivative Gaussian monocycle parameters.
// support_half_width is the truncation extent; it must be wide enough that
// the clipped tail carries < 1e-6 of the pulse energy.
struct PulseParams {
    double tau;                 // pulse width parameter, seconds
    double sample_rate;         // Hz
    double support_half_width;  // seconds

    static PulseParams standard(double tau, double sample_rate) {
        return PulseParams{tau, sample_rate, 2.0 * tau};
    }
};

struct FrameConfig {
    double frame_duration;    // T_f, seconds
    double chip_duration;     // seconds
    int th_cardinality;       // number of chips available for hopping
    double sample_rate;       // Hz
    int frames_per_symbol = 1;
};

struct ThCode {
    std::vector<int> chip_indices;  // one per frame, each in [0, cardinality)
};

struct PeakStats {
    double peak;            // max |w|
    std::size_t peak_index; // first index attaining it
    double adjacent_diff;   // |w(i) - w(i-1)| at the peak
};

// Samples per frame: ceil(T_f * F_s), robust to representation error.
std::size_t frame_samples(const FrameConfig& cfg);

// w(t) = A (1 - 4*pi*(t/tau)^2) exp(-2*pi*(t/tau)^2) on [-shw, +shw],
// A chosen so that the sampled pulse has unit l2 norm.
Waveform generate_pulse(const PulseParams& params);

// Number of samples in the smallest centered window holding all but 1e-6
// of the pulse energy.
std::size_t effective_support(const Waveform& w, double energy_tail = 1e-6);

PeakStats pulse_peak_stats(const Waveform& w);

ThCode generate_th_code(std::size_t n_frames, int cardinality, std::uint64_t seed);

// Length-Omega frame: bit * w placed at the chip offset, zero elsewhere.
// bit must be +1 or -1.
Waveform modulate_frame(int bit, int chip_index, const FrameConfig& cfg,
                        const Waveform& w);

}  // namespace uwb
