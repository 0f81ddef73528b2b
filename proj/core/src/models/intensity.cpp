#include "colstate/models/intensity.hpp"

#include <cmath>

#include "colstate/errors.hpp"

namespace colstate::models {

namespace {

constexpr long kLogSpaceThreshold = 100;

double cs_log_survival_sum(double p, double index, long k) {
    double sum = 0.0;
    for (long i = 1; i <= k; ++i)
        sum += std::log1p(-p * std::pow(static_cast<double>(i), -index));
    return sum;
}

}  // namespace

double cs_survival(const CsParams& params, long k) {
    if (k < 0) throw InputError("run length must be >= 0");
    params.validate();
    if (k > kLogSpaceThreshold)
        return params.amplitude *
               std::exp(cs_log_survival_sum(params.hazard_scale, params.index, k));
    double product = 1.0;
    for (long i = 1; i <= k; ++i)
        product *= 1.0 - params.hazard_scale * std::pow(static_cast<double>(i),
                                                        -params.index);
    return params.amplitude * product;
}

double cs_hazard(const CsParams& params, long k) {
    if (k < 1) throw InputError("hazard step must be >= 1");
    return params.hazard_scale * std::pow(static_cast<double>(k), -params.index);
}

double cs_run_pmf(const CsParams& params, long k) {
    if (k < 0) throw InputError("run length must be >= 0");
    params.validate();
    const double tail = params.hazard_scale *
                        std::pow(static_cast<double>(k) + 1.0, -params.index);
    if (k > kLogSpaceThreshold)
        return params.amplitude * tail *
               std::exp(cs_log_survival_sum(params.hazard_scale, params.index, k));
    double product = 1.0;
    for (long i = 1; i <= k; ++i)
        product *= 1.0 - params.hazard_scale * std::pow(static_cast<double>(i),
                                                        -params.index);
    return params.amplitude * tail * product;
}

double nexp_run_pmf(const NExpParams& params, long k) {
    if (k < 0) throw InputError("run length must be >= 0");
    double sum = 0.0;
    for (std::size_t i = 0; i < params.amplitudes.size(); ++i)
        sum += params.amplitudes[i] * std::exp(-params.decay_rates[i] * k);
    return sum;
}

double limit_cs_survival(const LimitCsParams& params, long k) {
    if (k < 1) throw InputError("limit-CS survival starts at k = 1");
    params.validate();
    if (k > kLogSpaceThreshold) {
        double sum = 0.0;
        for (long i = 2; i <= k; ++i)
            sum += std::log1p(-std::pow(static_cast<double>(i), -params.index));
        return params.amplitude * std::exp(sum);
    }
    double product = 1.0;
    for (long i = 2; i <= k; ++i)
        product *= 1.0 - std::pow(static_cast<double>(i), -params.index);
    return params.amplitude * product;
}

double limit_cs_run_pmf(const LimitCsParams& params, long k) {
    if (k < 1) throw InputError("limit-CS run length starts at k = 1");
    return limit_cs_survival(params, k) *
           std::pow(static_cast<double>(k) + 1.0, -params.index);
}

int param_count(Family family, int order) {
    switch (family) {
        case Family::cs: return 3;
        case Family::nexp: return 2 * order;
        case Family::limit_cs: return 2;
    }
    return 0;
}

std::vector<double> intensity_profile(Family family, const std::vector<double>& w,
                                      int k_max) {
    std::vector<double> lambda(static_cast<std::size_t>(k_max));
    switch (family) {
        case Family::cs: {
            const double a = w[0], p = w[1], index = w[2];
            double log_survival = 0.0;
            bool dead = false;
            for (int k = 1; k <= k_max; ++k) {
                const double factor = 1.0 - p * std::pow(static_cast<double>(k), -index);
                if (factor <= 0.0) dead = true;
                if (!dead) log_survival += std::log(factor);
                const double tail =
                    p * std::pow(static_cast<double>(k) + 1.0, -index);
                lambda[static_cast<std::size_t>(k - 1)] =
                    dead ? 0.0 : a * tail * std::exp(log_survival);
            }
            break;
        }
        case Family::nexp: {
            const std::size_t n = w.size() / 2;
            std::vector<double> ratio(n), power(n);
            for (std::size_t i = 0; i < n; ++i) {
                ratio[i] = std::exp(-w[2 * i + 1]);
                power[i] = 1.0;
            }
            for (int k = 1; k <= k_max; ++k) {
                double sum = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    power[i] *= ratio[i];
                    sum += w[2 * i] * power[i];
                }
                lambda[static_cast<std::size_t>(k - 1)] = sum;
            }
            break;
        }
        case Family::limit_cs: {
            const double a = w[0], index = w[1];
            double log_survival = 0.0;
            bool dead = false;
            for (int k = 1; k <= k_max; ++k) {
                if (k >= 2) {
                    const double factor =
                        1.0 - std::pow(static_cast<double>(k), -index);
                    if (factor <= 0.0) dead = true;
                    if (!dead) log_survival += std::log(factor);
                }
                const double tail = std::pow(static_cast<double>(k) + 1.0, -index);
                lambda[static_cast<std::size_t>(k - 1)] =
                    dead ? 0.0 : a * tail * std::exp(log_survival);
            }
            break;
        }
    }
    return lambda;
}

std::vector<std::vector<double>> intensity_gradient_profile(
    Family family, const std::vector<double>& w, int k_max) {
    const auto lambda = intensity_profile(family, w, k_max);
    std::vector<std::vector<double>> grad(
        w.size(), std::vector<double>(static_cast<std::size_t>(k_max)));
    switch (family) {
        case Family::cs: {
            const double a = w[0], p = w[1], index = w[2];
            // Running sums over the survival factors:
            //   d log lambda / dp    = 1/p - sum_i 1/(i^index - p)
            //   d log lambda / dindex = -log(k+1) + sum_i p log(i)/(i^index - p)
            double sum_p = 0.0, sum_index = 0.0;
            for (int k = 1; k <= k_max; ++k) {
                const double ia = std::pow(static_cast<double>(k), index);
                sum_p += 1.0 / (ia - p);
                sum_index += p * std::log(static_cast<double>(k)) / (ia - p);
                const double lam = lambda[static_cast<std::size_t>(k - 1)];
                grad[0][static_cast<std::size_t>(k - 1)] = lam / a;
                grad[1][static_cast<std::size_t>(k - 1)] = lam * (1.0 / p - sum_p);
                grad[2][static_cast<std::size_t>(k - 1)] =
                    lam * (sum_index - std::log(static_cast<double>(k) + 1.0));
            }
            break;
        }
        case Family::nexp: {
            const std::size_t n = w.size() / 2;
            for (std::size_t i = 0; i < n; ++i) {
                const double a = w[2 * i], b = w[2 * i + 1];
                const double ratio = std::exp(-b);
                double power = 1.0;
                for (int k = 1; k <= k_max; ++k) {
                    power *= ratio;
                    grad[2 * i][static_cast<std::size_t>(k - 1)] = power;
                    grad[2 * i + 1][static_cast<std::size_t>(k - 1)] =
                        -static_cast<double>(k) * a * power;
                }
            }
            break;
        }
        case Family::limit_cs: {
            const double a = w[0], index = w[1];
            double sum_index = 0.0;
            for (int k = 1; k <= k_max; ++k) {
                if (k >= 2) {
                    const double ia = std::pow(static_cast<double>(k), index);
                    sum_index += std::log(static_cast<double>(k)) / (ia - 1.0);
                }
                const double lam = lambda[static_cast<std::size_t>(k - 1)];
                grad[0][static_cast<std::size_t>(k - 1)] = lam / a;
                grad[1][static_cast<std::size_t>(k - 1)] =
                    lam * (sum_index - std::log(static_cast<double>(k) + 1.0));
            }
            break;
        }
    }
    return grad;
}

}  // namespace colstate::models
