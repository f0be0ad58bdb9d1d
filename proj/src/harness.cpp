#include "uwb/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "uwb/rng.hpp"

namespace uwb {

ReceiverSpec ReceiverSpec::conventional() {
    return ReceiverSpec{ReceiverKind::conventional, "conventional"};
}
ReceiverSpec ReceiverSpec::blanking_fixed(double T) {
    ReceiverSpec s{ReceiverKind::blanking, "blanking"};
    s.threshold = T;
    return s;
}
ReceiverSpec ReceiverSpec::blanking_opt() {
    ReceiverSpec s{ReceiverKind::blanking, "blanking_topt"};
    s.optimal_threshold = true;
    return s;
}
ReceiverSpec ReceiverSpec::cda_mu(double mu) {
    ReceiverSpec s{ReceiverKind::cda, "cda"};
    s.mu = mu;
    return s;
}
ReceiverSpec ReceiverSpec::cda_kappa(double kappa) {
    ReceiverSpec s{ReceiverKind::cda, "cda"};
    s.kappa = kappa;
    return s;
}

void SimConfig::validate() const {
    if (snr_grid_db.empty()) throw std::invalid_argument("empty SNR grid");
    if (receivers.empty()) throw std::invalid_argument("no receivers enabled");
    if (max_bits < 1) throw std::invalid_argument("max_bits must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p outside [0,1]");
    if (pulse.sample_rate != frame.sample_rate)
        throw std::invalid_argument("pulse and frame sample rates differ");
    const Waveform w = generate_pulse(pulse);
    const std::size_t omega = frame_samples(frame);
    const double chip_span = (frame.th_cardinality - 1) * frame.chip_duration;
    if (chip_span + 2.0 * pulse.support_half_width > frame.frame_duration + 1e-15)
        throw std::invalid_argument("TH chips plus pulse support exceed the frame");
    if (w.size() > omega) throw std::invalid_argument("pulse longer than frame");
    if (channel == ChannelKind::sv) {
        const double pulse_ns = 2.0 * pulse.support_half_width * 1e9;
        if (sv.max_excess_delay + pulse_ns > frame.frame_duration * 1e9)
            throw std::invalid_argument("channel excess delay plus pulse exceed the frame");
    }
}

ResolvedPoint resolve_point(const SimConfig& cfg, std::size_t snr_index) {
    ResolvedPoint pt;
    pt.cfg = &cfg;
    pt.snr_index = snr_index;
    pt.snr_db = cfg.snr_grid_db.at(snr_index);
    pt.noise = noise_params_from_budget({pt.snr_db, cfg.sinr_db}, cfg.p);
    pt.pulse = generate_pulse(cfg.pulse);
    pt.omega = frame_samples(cfg.frame);
    pt.rho_s = lag1_correlation(pt.pulse);
    for (const auto& spec : cfg.receivers) {
        ResolvedPoint::ResolvedReceiver rr{spec, spec.threshold, spec.mu};
        if (spec.kind == ReceiverKind::blanking && spec.optimal_threshold)
            rr.threshold = optimal_threshold(0.5, 0.5, pt.noise, pt.rho_s).t_opt;
        if (spec.kind == ReceiverKind::cda && spec.mu == 0.0)
            rr.mu = select_mu(pt.pulse, spec.kappa);
        pt.receivers.push_back(std::move(rr));
    }
    return pt;
}

namespace {

// Component labels for per-trial stream splitting.
constexpr const char* kBitStream = "bit";
constexpr const char* kChipStream = "chip";
constexpr const char* kChannelStream = "channel";
constexpr const char* kImpulseStream = "impulse";
constexpr const char* kNoiseStream = "awgn";

std::uint64_t trial_seed(const ResolvedPoint& pt, const char* label,
                         std::uint64_t trial_index) {
    return derive_seed(pt.cfg->master_seed, label,
                       static_cast<std::uint64_t>(pt.snr_index), trial_index);
}

}  // namespace

TrialResult run_trial(const ResolvedPoint& pt, std::uint64_t trial_index) {
    const SimConfig& cfg = *pt.cfg;

    auto bit_eng = make_engine(trial_seed(pt, kBitStream, trial_index));
    const int bit = std::bernoulli_distribution(0.5)(bit_eng) ? +1 : -1;

    auto chip_eng = make_engine(trial_seed(pt, kChipStream, trial_index));
    const int chip =
        std::uniform_int_distribution<int>(0, cfg.frame.th_cardinality - 1)(chip_eng);

    ChannelRealization h =
        cfg.channel == ChannelKind::awgn
            ? awgn_channel()
            : sv_channel(cfg.sv, trial_seed(pt, kChannelStream, trial_index));

    const Waveform phi = make_template(pt.pulse, h, chip, cfg.frame);
    Waveform s = phi;
    if (bit < 0)
        for (double& v : s.samples) v = -v;

    const auto impulse = bg_impulse_with_mask(pt.omega, pt.noise,
                                              trial_seed(pt, kImpulseStream, trial_index));
    const Waveform n = awgn_noise(pt.omega, pt.noise.sigma_n2,
                                  trial_seed(pt, kNoiseStream, trial_index));

    Waveform r = s;
    Waveform r0 = s;  // impulse-free path for the reference curve
    for (std::size_t k = 0; k < pt.omega; ++k) {
        r.samples[k] += impulse.noise[k] + n[k];
        r0.samples[k] += n[k];
    }

    TrialResult out;
    out.tx_bit = bit;
    out.baseline_rx_bit = detect(correlate(r0, phi));
    bool first_cda = true;
    for (const auto& rr : pt.receivers) {
        double zeta = 0.0;
        std::size_t fa = 0, miss = 0;
        double frame_mse = 0.0;
        switch (rr.spec.kind) {
            case ReceiverKind::conventional: {
                zeta = correlate(r, phi);
                for (std::size_t k = 0; k < pt.omega; ++k)
                    if (impulse.mask[k]) ++miss;
                frame_mse = mse(s, r);
                break;
            }
            case ReceiverKind::blanking: {
                const Waveform y = blank(r, BlankingParams{rr.threshold});
                zeta = correlate(y, phi);
                for (std::size_t k = 0; k < pt.omega; ++k) {
                    const bool zeroed = y[k] == 0.0 && r[k] != 0.0;
                    if (zeroed && !impulse.mask[k]) ++fa;
                    if (!zeroed && impulse.mask[k]) ++miss;
                }
                frame_mse = mse(s, y);
                break;
            }
            case ReceiverKind::cda: {
                auto [y, diag] = cda(r, CdaParams::from_mu(rr.mu), &s);
                zeta = correlate(y, phi);
                std::vector<bool> zeroed(pt.omega, false);
                for (std::size_t k : diag.zeroed_indices) zeroed[k] = true;
                for (std::size_t k = 0; k < pt.omega; ++k) {
                    if (zeroed[k] && !impulse.mask[k]) ++fa;
                    if (!zeroed[k] && impulse.mask[k]) ++miss;
                }
                frame_mse = diag.mse_trace.empty() ? mse(s, y) : diag.mse_trace.back();
                if (first_cda) {
                    out.cda_iterations = diag.iterations;
                    first_cda = false;
                }
                break;
            }
        }
        out.zetas.push_back(zeta);
        out.rx_bits.push_back(detect(zeta));
        out.false_alarms.push_back(fa);
        out.misses.push_back(miss);
        out.frame_mse.push_back(frame_mse);
    }
    return out;
}

PointEstimate make_estimate(std::uint64_t errors, std::uint64_t bits,
                            std::uint64_t min_errors) {
    PointEstimate e;
    e.bits = bits;
    e.errors = errors;
    e.ber = bits ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
    // Wilson 95% interval
    if (bits) {
        const double z = 1.959963984540054;
        const double nd = static_cast<double>(bits);
        const double p_hat = e.ber;
        const double z2 = z * z;
        const double denom = 1.0 + z2 / nd;
        const double center = (p_hat + z2 / (2.0 * nd)) / denom;
        const double half =
            z * std::sqrt(p_hat * (1.0 - p_hat) / nd + z2 / (4.0 * nd * nd)) / denom;
        e.ci_lo = std::max(0.0, center - half);
        e.ci_hi = std::min(1.0, center + half);
    }
    e.low_confidence = errors < min_errors;
    return e;
}

namespace {

// Runs trials [begin, end) of a sweep point, accumulating error counts.
struct BlockCounts {
    std::vector<std::uint64_t> errors;  // per receiver
    std::uint64_t baseline_errors = 0;
    std::uint64_t trials = 0;
};

BlockCounts run_block(const ResolvedPoint& pt, std::uint64_t begin, std::uint64_t end,
                      int workers) {
    const std::size_t n_rx = pt.receivers.size();
    const std::uint64_t count = end - begin;
    const int n_threads = std::max(
        1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(count, 256))));

    std::vector<BlockCounts> partial(static_cast<std::size_t>(n_threads));
    auto worker = [&](int t) {
        BlockCounts& c = partial[static_cast<std::size_t>(t)];
        c.errors.assign(n_rx, 0);
        const std::uint64_t lo = begin + count * t / n_threads;
        const std::uint64_t hi = begin + count * (t + 1) / n_threads;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const TrialResult tr = run_trial(pt, i);
            for (std::size_t rxi = 0; rxi < n_rx; ++rxi)
                if (tr.rx_bits[rxi] != tr.tx_bit) ++c.errors[rxi];
            if (tr.baseline_rx_bit != tr.tx_bit) ++c.baseline_errors;
            ++c.trials;
        }
    };
    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker, t);
        for (auto& th : threads) th.join();
    }
    BlockCounts total;
    total.errors.assign(n_rx, 0);
    for (const auto& c : partial) {
        for (std::size_t rxi = 0; rxi < n_rx; ++rxi) total.errors[rxi] += c.errors[rxi];
        total.baseline_errors += c.baseline_errors;
        total.trials += c.trials;
    }
    return total;
}

}  // namespace

BerCurve run_ber_sweep(const SimConfig& cfg) {
    cfg.validate();
    const int workers = cfg.workers > 0
                            ? cfg.workers
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    constexpr std::uint64_t kBlock = 8192;

    BerCurve curve;
    curve.master_seed = cfg.master_seed;
    curve.snr_db = cfg.snr_grid_db;
    for (const auto& r : cfg.receivers) curve.receiver_labels.push_back(r.label);
    curve.receiver_labels.push_back("bpsk");  // impulse-free reference

    const Waveform w = generate_pulse(cfg.pulse);
    const double pulse_energy = energy(w);

    for (std::size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
        const ResolvedPoint pt = resolve_point(cfg, si);
        const std::size_t n_rx = pt.receivers.size();

        std::vector<std::uint64_t> errors(n_rx + 1, 0);  // + baseline
        std::uint64_t bits = 0;
        while (bits < cfg.max_bits) {
            const std::uint64_t end = std::min<std::uint64_t>(bits + kBlock, cfg.max_bits);
            const BlockCounts c = run_block(pt, bits, end, workers);
            for (std::size_t rxi = 0; rxi < n_rx; ++rxi) errors[rxi] += c.errors[rxi];
            errors[n_rx] += c.baseline_errors;
            bits = end;
            const std::uint64_t min_err =
                *std::min_element(errors.begin(), errors.end());
            if (min_err >= cfg.min_errors) break;
        }

        std::vector<PointEstimate> row;
        row.reserve(n_rx + 1);
        for (std::size_t rxi = 0; rxi <= n_rx; ++rxi)
            row.push_back(make_estimate(errors[rxi], bits, cfg.min_errors));
        curve.points.push_back(std::move(row));

        BerTheoryInputs ti;
        ti.rho = 0.0;
        ti.pulse_energy = pulse_energy;
        ti.path_gains = {1.0};  // realizations are unit-energy
        ti.sigma_e2 = pt.noise.sigma_n2;
        curve.theory.push_back(theory_ber(ti));
    }
    return curve;
}

std::vector<MseRow> run_mse_convergence(const SimConfig& cfg,
                                        const std::vector<double>& mu_list,
                                        std::size_t n_trials) {
    cfg.validate();
    if (mu_list.empty()) throw std::invalid_argument("empty mu list");
    if (cfg.snr_grid_db.size() != 1)
        throw std::invalid_argument("mse study expects a single SNR point");
    const ResolvedPoint pt = resolve_point(cfg, 0);

    // Traces are capped and hold-extended so that per-(mu, iteration) means
    // are over the full trial population.
    constexpr std::size_t kTraceLen = 65;

    struct TrialTraces {
        std::vector<double> v;  // mu-major [mu][iter]
    };
    std::vector<TrialTraces> per_trial(n_trials);

    const int workers = cfg.workers > 0
                            ? cfg.workers
                            : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int n_threads =
        std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::size_t>(n_trials, 256))));
    auto worker = [&](int t) {
        const std::size_t lo = n_trials * static_cast<std::size_t>(t) /
                               static_cast<std::size_t>(n_threads);
        const std::size_t hi = n_trials * static_cast<std::size_t>(t + 1) /
                               static_cast<std::size_t>(n_threads);
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t trial = static_cast<std::uint64_t>(i);
            auto bit_eng = make_engine(trial_seed(pt, kBitStream, trial));
            const int bit = std::bernoulli_distribution(0.5)(bit_eng) ? +1 : -1;
            auto chip_eng = make_engine(trial_seed(pt, kChipStream, trial));
            const int chip = std::uniform_int_distribution<int>(
                0, cfg.frame.th_cardinality - 1)(chip_eng);
            ChannelRealization h =
                cfg.channel == ChannelKind::awgn
                    ? awgn_channel()
                    : sv_channel(cfg.sv, trial_seed(pt, kChannelStream, trial));
            Waveform s = make_template(pt.pulse, h, chip, cfg.frame);
            if (bit < 0)
                for (double& v : s.samples) v = -v;
            const Waveform imp =
                bg_impulse(pt.omega, pt.noise, trial_seed(pt, kImpulseStream, trial));
            const Waveform nz = awgn_noise(pt.omega, pt.noise.sigma_n2,
                                           trial_seed(pt, kNoiseStream, trial));
            Waveform r = s;
            for (std::size_t k = 0; k < pt.omega; ++k)
                r.samples[k] += imp[k] + nz[k];

            TrialTraces& tt = per_trial[i];
            tt.v.assign(mu_list.size() * kTraceLen, 0.0);
            for (std::size_t m = 0; m < mu_list.size(); ++m) {
                auto [y, diag] = cda(r, CdaParams::from_mu(mu_list[m]), &s);
                (void)y;
                for (std::size_t it = 0; it < kTraceLen; ++it) {
                    const std::size_t j = std::min(it, diag.mse_trace.size() - 1);
                    tt.v[m * kTraceLen + it] = diag.mse_trace[j];
                }
            }
        }
    };
    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker, t);
        for (auto& th : threads) th.join();
    }

    // Ordered reduction by trial index keeps results independent of the
    // thread count.
    std::vector<double> sums(mu_list.size() * kTraceLen, 0.0);
    for (const auto& tt : per_trial)
        for (std::size_t j = 0; j < sums.size(); ++j) sums[j] += tt.v[j];

    std::vector<MseRow> rows;
    rows.reserve(sums.size());
    for (std::size_t m = 0; m < mu_list.size(); ++m)
        for (std::size_t it = 0; it < kTraceLen; ++it)
            rows.push_back(MseRow{mu_list[m], it,
                                  sums[m * kTraceLen + it] / static_cast<double>(n_trials)});
    return rows;
}

std::vector<ThresholdRow> run_threshold_study(const SimConfig& cfg, double prior_s,
                                              double prior_i) {
    cfg.validate();
    const Waveform w = generate_pulse(cfg.pulse);
    const double rho_s = lag1_correlation(w);
    std::vector<ThresholdRow> rows;
    for (double snr : cfg.snr_grid_db) {
        const NoiseParams noise = noise_params_from_budget({snr, cfg.sinr_db}, cfg.p);
        const ThresholdResult res = optimal_threshold(prior_s, prior_i, noise, rho_s);
        rows.push_back(ThresholdRow{snr, cfg.sinr_db, res.t_opt, res.objective});
    }
    return rows;
}

}  // namespace uwb
