#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colstate/fsm/machine.hpp"

namespace colstate::fsm {

// One retained machine from the stratified ensemble together with its
// convergence-ratio sequences.
struct ConvergenceSample {
    std::uint64_t machine_id = 0;  // attempt index at which it was drawn
    Machine machine;
    double spectral_radius = 0.0;
    int bin = 0;
    int offset_q = 0;
    std::vector<double> plain_ratios;   // C(k), k = 1..horizon
    std::vector<double> offset_ratios;  // C-hat(q, k), k = 1..horizon
};

struct StratifyOptions {
    int bins = 20;
    int per_bin = 50;
    std::string word = "C";
    std::uint64_t seed = 0;
    // Rejection sampling stops after bins * per_bin_attempts draws even
    // if some bins stayed empty; partial results carry a warning.
    long per_bin_attempts = 1000000;
};

struct StratifiedSample {
    std::vector<ConvergenceSample> samples;  // ratio fields not yet filled
    std::string word;                        // the word the radii refer to
    std::vector<int> bin_counts;
    std::vector<int> unfilled_bins;
    long attempts = 0;
    bool complete = false;
};

// Rejection-samples strongly connected unifilar machines into equal-width
// spectral-radius bins on (0, 1), for the word's matrix. Machines whose
// word matrix is nilpotent, or that deterministically repeat the word,
// fail the decay-bound preconditions and are discarded.
StratifiedSample stratified_sample_by_radius(int p, const StratifyOptions& opts = {});

// Fills the ratio sequences of every sample, k = 1..horizon.
void compute_convergence_ratios(StratifiedSample& s, int offset_q, int horizon);

struct StudyQuantiles {
    double median = 0.0;
    double lo1sigma = 0.0;  // 16th percentile
    double hi1sigma = 0.0;  // 84th percentile
};

// Quantiles of C-hat(q, k) at the final horizon over all samples.
StudyQuantiles offset_ratio_quantiles(const StratifiedSample& s, int k);

// CSV with header rho_bin,k,median_C,median_Chat,lo1sigma,hi1sigma; one
// row per (bin, k), rho_bin reported as the bin midpoint.
std::string study_csv(const StratifiedSample& s);

// Linear-interpolation percentile of an unsorted copy; frac in [0, 1].
double percentile(std::vector<double> values, double frac);

}  // namespace colstate::fsm
