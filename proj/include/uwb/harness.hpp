#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwb/analysis.hpp"
#include "uwb/channel.hpp"
#include "uwb/noise.hpp"
#include "uwb/receiver.hpp"
#include "uwb/waveform.hpp"

namespace uwb {

enum class ChannelKind { awgn, sv };
enum class ReceiverKind { conventional, blanking, cda };

struct ReceiverSpec {
    ReceiverKind kind = ReceiverKind::conventional;
    std::string label = "conventional";
    // blanking
    double threshold = 0.0;
    bool optimal_threshold = false;  // derive T per sweep point
    // cda
    double mu = 0.0;     // fixed threshold; 0 selects the kappa rule
    double kappa = 0.0;  // used when mu == 0

    static ReceiverSpec conventional();
    static ReceiverSpec blanking_fixed(double T);
    static ReceiverSpec blanking_opt();
    static ReceiverSpec cda_mu(double mu);
    static ReceiverSpec cda_kappa(double kappa);
};

struct SimConfig {
    PulseParams pulse{0.4e-9, 16e9, 0.8e-9};
    FrameConfig frame{10e-9, 1e-9, 3, 16e9, 1};
    ChannelKind channel = ChannelKind::awgn;
    SvChannelParams sv{};
    std::vector<double> snr_grid_db;
    double sinr_db = -30.0;
    double p = 0.01;
    std::vector<ReceiverSpec> receivers;
    std::uint64_t max_bits = 1'000'000;
    std::uint64_t min_errors = 100;
    std::uint64_t master_seed = 1;
    int workers = 0;  // 0 = hardware concurrency

    void validate() const;  // throws on inconsistent settings
};

// Everything fixed for one sweep point, precomputed once.
struct ResolvedPoint {
    const SimConfig* cfg;
    std::size_t snr_index;
    double snr_db;
    NoiseParams noise;
    Waveform pulse;          // unit-energy monocycle
    std::size_t omega;
    double rho_s;            // lag-1 correlation of the clean pulse
    struct ResolvedReceiver {
        ReceiverSpec spec;
        double threshold;    // blanking T at this point
        double mu;           // cda mu at this point
    };
    std::vector<ResolvedReceiver> receivers;
};

ResolvedPoint resolve_point(const SimConfig& cfg, std::size_t snr_index);

struct TrialResult {
    int tx_bit;
    std::vector<int> rx_bits;        // per receiver
    std::vector<double> zetas;       // per receiver
    std::vector<std::size_t> false_alarms;  // zeroed/blanked clean samples
    std::vector<std::size_t> misses;        // surviving impulse samples
    std::vector<double> frame_mse;   // front-end output vs clean s
    std::size_t cda_iterations = 0;  // of the first cda receiver, if any
    int baseline_rx_bit;             // impulse-free conventional on s + n
};

// One frame through every enabled receiver. All receivers see the identical
// received vector r = s + i + n; the impulse-free baseline sees s + n built
// from the same component draws.
TrialResult run_trial(const ResolvedPoint& pt, std::uint64_t trial_index);

struct PointEstimate {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    bool low_confidence = false;
};

struct BerCurve {
    std::vector<double> snr_db;
    std::vector<std::string> receiver_labels;          // + trailing "bpsk"
    std::vector<std::vector<PointEstimate>> points;    // [snr][receiver]
    std::vector<double> theory;                        // per snr point
    std::uint64_t master_seed = 0;
    std::string config_hash;
};

BerCurve run_ber_sweep(const SimConfig& cfg);

struct MseRow {
    double mu;
    std::size_t iteration;
    double mean_mse;
};

// Mean per-iteration MSE trace of the cluster-detection front end, one
// curve per mu. Trials share the received vector across all mu values.
std::vector<MseRow> run_mse_convergence(const SimConfig& cfg,
                                        const std::vector<double>& mu_list,
                                        std::size_t n_trials);

struct ThresholdRow {
    double snr_db;
    double sinr_db;
    double t_opt;
    double objective;
};

std::vector<ThresholdRow> run_threshold_study(const SimConfig& cfg,
                                              double prior_s = 0.5,
                                              double prior_i = 0.5);

// Wilson 95% interval.
PointEstimate make_estimate(std::uint64_t errors, std::uint64_t bits,
                            std::uint64_t min_errors);

}  // namespace uwb
