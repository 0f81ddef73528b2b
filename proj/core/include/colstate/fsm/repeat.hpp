#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "colstate/fsm/machine.hpp"
#include "colstate/fsm/spectral.hpp"

namespace colstate::fsm {

// P(w^k): probability that a length k|w| emission run spells w repeated
// k times, summed over start states weighted by the initial distribution.
// Computed by repeated squaring of the word matrix with per-product
// rescaling, so large k cannot underflow internally.
double repeat_probability(const Machine& m, const std::string& word, long k);

// log P(w^k); -inf when the probability is exactly zero.
double log_repeat_probability(const Machine& m, const std::string& word, long k);

// log P(w^k) for k = 1..k_max in one sequential sweep. `initial`
// overrides the machine's own distribution when non-null.
std::vector<double> repeat_log_profile(const Machine& m, const std::string& word,
                                       int k_max,
                                       const Eigen::VectorXd* initial = nullptr);

struct DecayOptions {
    int horizon = 64;
    SpectralOptions spectral;
};

// Finite-k view of the exponential decay bound: the spectral radius next
// to the observable ratio sequence P(w^{k+1})/P(w^k). The limiting rate
// is a lim-sup, so running maxima are reported alongside the raw ratios
// rather than a single point estimate.
struct DecayProfile {
    double spectral_radius = 0.0;
    bool nilpotent = false;
    // Zero probability within the horizon: the possibility condition
    // fails for this machine/word/initial-distribution combination.
    bool possibility_violated = false;
    std::vector<double> log_probabilities;  // log P(w^k), k = 1..horizon
    std::vector<double> ratios;             // P(w^{k+1})/P(w^k), k = 1..horizon-1
    std::vector<double> ratio_running_max;
    // Non-monotone ratio tail; expected only for periodic class structure.
    bool oscillation_suspected = false;
};

DecayProfile asymptotic_decay(const Machine& m, const std::string& word,
                              const Eigen::VectorXd& initial,
                              const DecayOptions& opts = {});

inline DecayProfile asymptotic_decay(const Machine& m, const std::string& word,
                                     const DecayOptions& opts = {}) {
    return asymptotic_decay(m, word, m.initial, opts);
}

// C(k) = [P(w^k)]^{1/k} / rho.
double convergence_ratio(const Machine& m, const std::string& word, int k);

// Transient-insensitive variant [P(w^{q+k})/P(w^q)]^{1/k} / rho.
double convergence_ratio_offset(const Machine& m, const std::string& word, int q,
                                int k);

// exp of the least-squares slope of log P(w^k) over k in [window_start,
// 2*window_start]; converges to the spectral radius.
double windowed_decay_rate(const Machine& m, const std::string& word,
                           int window_start);

}  // namespace colstate::fsm
