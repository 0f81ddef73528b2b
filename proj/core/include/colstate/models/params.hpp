#pragma once

#include <vector>

namespace colstate::models {

// Parameter ranges shared by the fitter and the evidence normalization.
// The decay floor of 1/200 puts the longest allowed exponential cutoff
// at 200 repeats; the hazard-scale cap of 0.995 is the same cutoff seen
// from the survival side.
struct PriorBox {
    double hazard_scale_max = 0.995;
    double decay_rate_min = 1.0 / 200.0;
    double decay_rate_max = 1.0;
    double index_max = 3.0;
};

// Collective-state run model: survival of a cooperative run decays with
// hazard hazard_scale / k^index, so the termination probability falls
// as a power law in the run length so far.
struct CsParams {
    double amplitude = 1.0;     // expected-count units
    double hazard_scale = 0.5;  // p in (0, 0.995]
    double index = 0.5;         // power-law index, >= 0

    void validate(const PriorBox& box = {}) const;
};

// Sum of exponentials: the asymptotic run-length law of any finite-state
// process. Decay rates are kept sorted ascending; the ordering removes
// the label-switching degeneracy.
struct NExpParams {
    std::vector<double> amplitudes;
    std::vector<double> decay_rates;

    int order() const { return static_cast<int>(decay_rates.size()); }
    void validate(const PriorBox& box = {}) const;
};

// Limiting collective-state form with unit hazard scale; the i = 1
// factor would vanish identically and is left out of the product.
struct LimitCsParams {
    double amplitude = 1.0;
    double index = 1.0;

    void validate() const;
};

enum class Family { cs, nexp, limit_cs };

const char* family_name(Family f);

}  // namespace colstate::models
