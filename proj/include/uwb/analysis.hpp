#pragma once

#include <cstddef>
#include <vector>

#include "uwb/channel.hpp"
#include "uwb/noise.hpp"
#include "uwb/waveform.hpp"

namespace uwb {

// Gaussian tail probability Q(x) = P(N(0,1) > x), via erfc.
double q(double x);

// Karagiannidis-Lioumpas approximation, valid for x > 0:
//   (1 - exp(-1.4 x)) exp(-x^2/2) / (1.135 sqrt(2 pi) x)
double q_approx(double x);

// Inputs for the sample-classification probabilities. rho_s is the lag-1
// correlation between consecutive samples of the desired signal.
struct DetectionProbInputs {
    double mu;
    double rho_s;
    double sigma_s2 = 1.0;
    double sigma_n2;
    double sigma_I2;
    double p;
};

// p_f = 2 Q( mu / sqrt(2((1 - rho_s) sigma_s^2 + sigma_n^2)) )
double prob_false_alarm(const DetectionProbInputs& in);

// p_m = 1 - 2 Q( mu / sqrt(2((1 - rho_s) sigma_s^2 + sigma_n^2 + p sigma_I^2)) )
double prob_miss(const DetectionProbInputs& in);

struct BlankingProbs {
    double p_f;
    double p_m;
};

// Blanking counterparts at threshold T:
//   p_fT = 2 Q(T / sqrt(sigma_s^2 + sigma_n^2))
//   p_mT = 1 - 2 Q(T / sqrt(sigma_s^2 + sigma_n^2 + p sigma_I^2))
BlankingProbs blanking_pf_pm(double T, double sigma_s2, double sigma_n2,
                             double sigma_I2, double p);

struct ThresholdResult {
    double t_opt;
    double objective;
    bool non_unimodal = false;  // multiple minima brackets seen on the coarse grid
};

// argmin_T { prior_s * p_f(T) + prior_i * p_m(T) } by golden-section search
// on [0, 10 sqrt(sigma_s^2 + sigma_n^2 + p sigma_I^2)], tolerance 1e-3,
// with q_approx inside the objective. The objective uses the same variance
// convention as prob_false_alarm / prob_miss (mu := T), which is what
// reproduces the published operating thresholds; see optimal_threshold_printed
// for the variant built on blanking_pf_pm.
ThresholdResult optimal_threshold(double prior_s, double prior_i,
                                  const NoiseParams& noise, double rho_s,
                                  double sigma_s2 = 1.0);

// Same objective built on the blanking_pf_pm expressions (no rho_s term).
ThresholdResult optimal_threshold_printed(double prior_s, double prior_i,
                                          const NoiseParams& noise,
                                          double sigma_s2 = 1.0);

struct BerTheoryInputs {
    double rho = 0.0;        // blanking-loss factor
    double pulse_energy;     // ||w||_2^2
    std::vector<double> path_gains;
    double sigma_e2;         // residual noise variance
};

// Q( sqrt( (1 - rho) ||w||^2 sum|alpha_l|^2 / sigma_e^2 ) )
double theory_ber(const BerTheoryInputs& in);

// Sample autocorrelation at lag 1, normalized by lag 0.
double lag1_correlation(const Waveform& x);

struct OverlapStats {
    std::size_t omega;     // samples per frame
    double omega_s;        // ceil(L * omega_w)
    double omega_i;        // ceil(p * omega)
    double omega_i_tilde;  // omega_i / L
    double p_si;           // omega_i_tilde / omega_w
    double p_sik;          // sum_{k=1..L} C(L,k) p_si^k (1-p_si)^(L-k)
    std::vector<double> p_sik_terms;  // the per-k terms of the sum
    double energy_loss_min;
    double energy_loss_max;
    double e_s_loss;       // p_sik * midpoint of the bounds
    bool regime_violated = false;  // omega_i_tilde >= omega_w
};

OverlapStats overlap_stats(const FrameConfig& cfg, std::size_t omega_w,
                           std::size_t L, double p, const ChannelRealization& h,
                           const Waveform& w);

// ||s - s_hat||^2 / N
double mse(const Waveform& s, const Waveform& s_hat);

}  // namespace uwb
