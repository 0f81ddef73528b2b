#include "colstate/models/poisson.hpp"

#include <cmath>
#include <limits>

#include "colstate/errors.hpp"

namespace colstate::models {

std::int64_t CountData::total() const {
    std::int64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
}

int CountData::distinct_positive_k() const {
    int distinct = 0;
    for (auto c : counts)
        if (c > 0) ++distinct;
    return distinct;
}

CountData CountData::from_histogram(const runstats::RunHistogram& hist, int k_max) {
    if (k_max <= 0) k_max = hist.max_k();
    CountData data;
    data.total_symbols = hist.total_symbols;
    data.counts.assign(static_cast<std::size_t>(std::max(k_max, 0)), 0);
    for (const auto& [k, c] : hist.counts) {
        if (k >= 1 && k <= k_max) data.counts[static_cast<std::size_t>(k - 1)] = c;
    }
    return data;
}

LogLike poisson_loglike(const CountData& data, const std::vector<double>& lambda) {
    if (lambda.size() != data.counts.size())
        throw InputError("intensity vector length must match k_max");
    LogLike out;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double lam = lambda[i];
        const std::int64_t n = data.counts[i];
        if (lam <= 0.0) {
            if (n > 0) {
                out.value = -std::numeric_limits<double>::infinity();
                out.impossible = true;
                return out;
            }
            continue;  // zero intensity contributes nothing where counts are zero
        }
        out.value += static_cast<double>(n) * std::log(lam) - lam;
    }
    return out;
}

LogLike poisson_loglike(const CountData& data, Family family,
                        const std::vector<double>& w) {
    return poisson_loglike(data, intensity_profile(family, w, data.k_max()));
}

std::vector<double> poisson_loglike_gradient(const CountData& data, Family family,
                                             const std::vector<double>& w) {
    const auto lambda = intensity_profile(family, w, data.k_max());
    const auto dlambda = intensity_gradient_profile(family, w, data.k_max());
    std::vector<double> grad(w.size(), 0.0);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double lam = lambda[i];
        const double n = static_cast<double>(data.counts[i]);
        // d/dw [n log(lam) - lam] = (n / lam - 1) dlam/dw
        const double weight = lam > 0.0 ? n / lam - 1.0 : -1.0;
        for (std::size_t j = 0; j < w.size(); ++j)
            grad[j] += weight * dlambda[j][i];
    }
    return grad;
}

}  // namespace colstate::models
