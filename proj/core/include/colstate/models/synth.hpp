#pragma once

#include <cstdint>

#include "colstate/models/params.hpp"
#include "colstate/runstats/run_histogram.hpp"

namespace colstate::models {

// Synthetic run-length histograms for recovery tests. Totals are exact:
// total_runs equals run_count and total_symbols counts the runs' C
// symbols plus the bracketing delimiters.

// Sequential hazard draw: after i-1 survived steps the run ends with
// probability hazard_scale / i^index. Accepts the full mathematical
// range hazard_scale in [0, 1] (a scale of 1 ends every run at once).
runstats::RunHistogram synth_cs(double hazard_scale, double index, long run_count,
                                std::uint64_t seed);

// Mixture of geometrics: component i is chosen with weight
// amplitude_i / (1 - e^{-b_i}) and yields k >= 0 with continuation
// probability e^{-b_i}.
runstats::RunHistogram synth_nexp(const NExpParams& params, long run_count,
                                  std::uint64_t seed);

}  // namespace colstate::models
