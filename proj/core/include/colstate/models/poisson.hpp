#pragma once

#include <cstdint>
#include <vector>

#include "colstate/models/intensity.hpp"
#include "colstate/runstats/run_histogram.hpp"

namespace colstate::models {

// Dense view of a run histogram over k = 1..k_max; k = 0 entries are
// diagnostics and never fitted.
struct CountData {
    std::vector<std::int64_t> counts;  // counts[k-1]
    std::int64_t total_symbols = 0;

    int k_max() const { return static_cast<int>(counts.size()); }
    std::int64_t total() const;
    int distinct_positive_k() const;

    // k_max <= 0 means "largest observed k".
    static CountData from_histogram(const runstats::RunHistogram& hist,
                                    int k_max = 0);
};

struct LogLike {
    double value = 0.0;
    // Some lambda(k) <= 0 where counts[k] > 0: the model assigns zero
    // probability to observed data.
    bool impossible = false;
};

// Poisson log-likelihood up to a model-independent constant:
// sum_k counts[k] * log(lambda(k)) - lambda(k).
LogLike poisson_loglike(const CountData& data, const std::vector<double>& lambda);

LogLike poisson_loglike(const CountData& data, Family family,
                        const std::vector<double>& w);

// Analytic gradient with respect to the packed parameter vector.
std::vector<double> poisson_loglike_gradient(const CountData& data, Family family,
                                             const std::vector<double>& w);

}  // namespace colstate::models
