#include "uwb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uwb {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt2Pi = 2.50662827463100050242;
}  // namespace

double q(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double q_approx(double x) {
    if (!(x > 0.0)) throw std::domain_error("q_approx requires x > 0");
    return (1.0 - std::exp(-1.4 * x)) * std::exp(-0.5 * x * x) / (1.135 * kSqrt2Pi * x);
}

double prob_false_alarm(const DetectionProbInputs& in) {
    const double var = 2.0 * ((1.0 - in.rho_s) * in.sigma_s2 + in.sigma_n2);
    if (!(var > 0.0)) throw std::domain_error("degenerate zero variance");
    return 2.0 * q(in.mu / std::sqrt(var));
}

double prob_miss(const DetectionProbInputs& in) {
    const double var =
        2.0 * ((1.0 - in.rho_s) * in.sigma_s2 + in.sigma_n2 + in.p * in.sigma_I2);
    if (!(var > 0.0)) throw std::domain_error("degenerate zero variance");
    return 1.0 - 2.0 * q(in.mu / std::sqrt(var));
}

BlankingProbs blanking_pf_pm(double T, double sigma_s2, double sigma_n2,
                             double sigma_I2, double p) {
    if (!(T > 0.0)) throw std::domain_error("threshold must be positive");
    const double vs = sigma_s2 + sigma_n2;
    const double vi = sigma_s2 + sigma_n2 + p * sigma_I2;
    if (!(vs > 0.0) || !(vi > 0.0)) throw std::domain_error("degenerate zero variance");
    return BlankingProbs{2.0 * q(T / std::sqrt(vs)),
                         1.0 - 2.0 * q(T / std::sqrt(vi))};
}

namespace {

template <typename F>
ThresholdResult minimize_threshold(F objective, double hi) {
    // Coarse grid to bracket the minimum (and to notice non-unimodality),
    // then golden-section refinement to 1e-3.
    constexpr int kGrid = 400;
    const double lo = 1e-8;
    double best = lo;
    double best_val = objective(lo);
    int minima = 0;
    double prev_val = best_val;
    bool descending = false;
    for (int i = 1; i <= kGrid; ++i) {
        const double t = lo + (hi - lo) * i / kGrid;
        const double v = objective(t);
        if (v < best_val) {
            best_val = v;
            best = t;
        }
        if (v < prev_val) {
            descending = true;
        } else if (descending) {
            ++minima;
            descending = false;
        }
        prev_val = v;
    }

    const double step = (hi - lo) / kGrid;
    double a = std::max(lo, best - step);
    double b = std::min(hi, best + step);
    constexpr double kGolden = 0.61803398874989484820;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > 1e-3) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = objective(d);
        }
    }
    const double t_opt = 0.5 * (a + b);
    return ThresholdResult{t_opt, objective(t_opt), minima > 1};
}

}  // namespace

ThresholdResult optimal_threshold(double prior_s, double prior_i,
                                  const NoiseParams& noise, double rho_s,
                                  double sigma_s2) {
    if (prior_s < 0.0 || prior_i < 0.0) throw std::invalid_argument("negative prior");
    const double vs = 2.0 * ((1.0 - rho_s) * sigma_s2 + noise.sigma_n2);
    const double vi = vs + 2.0 * noise.p * noise.sigma_I2;
    if (!(vs > 0.0)) throw std::domain_error("degenerate zero variance");
    const double hi = 10.0 * std::sqrt(sigma_s2 + noise.sigma_n2 + noise.p * noise.sigma_I2);
    auto objective = [&](double t) {
        return prior_s * 2.0 * q_approx(t / std::sqrt(vs)) +
               prior_i * (1.0 - 2.0 * q_approx(t / std::sqrt(vi)));
    };
    return minimize_threshold(objective, hi);
}

ThresholdResult optimal_threshold_printed(double prior_s, double prior_i,
                                          const NoiseParams& noise, double sigma_s2) {
    if (prior_s < 0.0 || prior_i < 0.0) throw std::invalid_argument("negative prior");
    const double vs = sigma_s2 + noise.sigma_n2;
    const double vi = vs + noise.p * noise.sigma_I2;
    const double hi = 10.0 * std::sqrt(vi);
    auto objective = [&](double t) {
        return prior_s * 2.0 * q_approx(t / std::sqrt(vs)) +
               prior_i * (1.0 - 2.0 * q_approx(t / std::sqrt(vi)));
    };
    return minimize_threshold(objective, hi);
}

double theory_ber(const BerTheoryInputs& in) {
    if (!(in.sigma_e2 > 0.0)) throw std::domain_error("sigma_e^2 must be positive");
    if (in.rho < 0.0 || in.rho >= 1.0) throw std::domain_error("rho outside [0,1)");
    double gains2 = 0.0;
    for (double a : in.path_gains) gains2 += a * a;
    return q(std::sqrt((1.0 - in.rho) * in.pulse_energy * gains2 / in.sigma_e2));
}

double lag1_correlation(const Waveform& x) {
    if (x.size() < 2) throw std::invalid_argument("need at least two samples");
    double r0 = 0.0, r1 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        r0 += x[k] * x[k];
        if (k + 1 < x.size()) r1 += x[k] * x[k + 1];
    }
    if (!(r0 > 0.0)) throw std::domain_error("zero-energy input");
    return r1 / r0;
}

OverlapStats overlap_stats(const FrameConfig& cfg, std::size_t omega_w,
                           std::size_t L, double p, const ChannelRealization& h,
                           const Waveform& w) {
    if (omega_w < 1 || L < 1) throw std::invalid_argument("omega_w and L must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p outside [0,1]");

    OverlapStats st{};
    st.omega = frame_samples(cfg);
    st.omega_s = std::ceil(static_cast<double>(L) * static_cast<double>(omega_w));
    st.omega_i = std::ceil(p * static_cast<double>(st.omega));
    st.omega_i_tilde = st.omega_i / static_cast<double>(L);
    st.p_si = st.omega_i_tilde / static_cast<double>(omega_w);
    st.regime_violated = st.omega_i_tilde >= static_cast<double>(omega_w);

    // Binomial sum over k = 1..L of C(L,k) p^k (1-p)^(L-k), terms kept.
    st.p_sik_terms.assign(L, 0.0);
    double coeff = 1.0;  // C(L,k) built incrementally
    double total = 0.0;
    const double ps = std::clamp(st.p_si, 0.0, 1.0);
    for (std::size_t k = 1; k <= L; ++k) {
        coeff *= static_cast<double>(L - k + 1) / static_cast<double>(k);
        const double term = coeff * std::pow(ps, static_cast<double>(k)) *
                            std::pow(1.0 - ps, static_cast<double>(L - k));
        st.p_sik_terms[k - 1] = term;
        total += term;
    }
    st.p_sik = std::clamp(total, 0.0, 1.0);

    double amin = std::fabs(h.gains[0]), amax = amin;
    for (double g : h.gains) {
        amin = std::min(amin, std::fabs(g));
        amax = std::max(amax, std::fabs(g));
    }
    // Per-sample loss bounds range over the omega_w non-negligible pulse
    // samples, i.e. the centered support window.
    const std::size_t ww = std::min(omega_w, w.size());
    const std::size_t start = (w.size() - ww) / 2;
    double wmin = std::fabs(w[start]), wmax = wmin;
    for (std::size_t i = start; i < start + ww; ++i) {
        wmin = std::min(wmin, std::fabs(w[i]));
        wmax = std::max(wmax, std::fabs(w[i]));
    }
    st.energy_loss_min = amin * amin * wmin * wmin;
    st.energy_loss_max = amax * amax * wmax * wmax;
    st.e_s_loss = st.p_sik * 0.5 * (st.energy_loss_min + st.energy_loss_max);
    return st;
}

double mse(const Waveform& s, const Waveform& s_hat) {
    if (s.size() != s_hat.size()) throw std::invalid_argument("length mismatch");
    if (s.samples.empty()) throw std::invalid_argument("empty waveform");
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double d = s[k] - s_hat[k];
        acc += d * d;
    }
    return acc / static_cast<double>(s.size());
}

}  // namespace uwb
