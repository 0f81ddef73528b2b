#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "colstate/models/poisson.hpp"

namespace colstate::models {

struct FitOptions {
    int starts = 32;            // Latin-hypercube starts over the fit box
    std::uint64_t seed = 0;
    double tolerance = 1e-10;   // relative log-likelihood spread at stop
    long max_evals_per_start = 0;  // 0: 600 * dimension
    int k_max = 0;              // 0: largest observed k
    // Worker threads across starts. Each start's search is a pure
    // function of its Latin-hypercube point and results merge in start
    // order, so the outcome is identical at any thread count.
    int threads = 1;
    PriorBox box;
};

struct FitResult {
    Family family = Family::cs;
    int order = 1;                // nEXP component count; 1 otherwise
    std::vector<double> params;   // packed layout, nEXP sorted by rate
    double log_like = 0.0;
    Eigen::MatrixXd hessian;      // of -loglike at the optimum
    // True only for an interior optimum whose curvature localizes the
    // posterior in every direction relative to the fit box; the Laplace
    // step and standard errors require it.
    bool hessian_pd = false;
    // Some parameter ended on the fit-box boundary: not a stationary
    // point, typically a dead mixture component.
    bool boundary_optimum = false;
    std::vector<double> std_errors;  // empty unless hessian_pd
    std::optional<double> log_evidence;
    int k_max = 0;
    std::int64_t total_symbols = 0;
    bool converged = false;
    int converged_starts = 0;

    CsParams cs_params() const;
    NExpParams nexp_params() const;
    LimitCsParams limit_cs_params() const;
};

// Poisson maximum likelihood by multi-start bounded Nelder-Mead over the
// family's fit box, deterministic given the seed. The Hessian comes from
// central finite differences with per-parameter steps
// max(1e-5, 1e-4 |w|), retried at 10x step if not positive definite.
// Throws FitError when the data cannot constrain the family or no start
// converges.
FitResult fit_mle(const runstats::RunHistogram& hist, Family family, int order,
                  const FitOptions& opts = {});

FitResult fit_mle(const CountData& data, Family family, int order,
                  const FitOptions& opts = {});

// Central finite-difference Hessian of an arbitrary objective; exposed
// for the evidence machinery and its tests.
Eigen::MatrixXd finite_difference_hessian(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double step_scale = 1.0);

namespace detail {

struct BoundedProblem {
    std::vector<double> lower, upper;
    std::vector<bool> log_scale;
    std::function<double(const std::vector<double>&)> objective;  // minimized
};

struct SearchOutcome {
    std::vector<double> point;
    double value = 0.0;
    bool converged = false;
    long evals = 0;
};

// Nelder-Mead restricted to the box, run in scaled unit coordinates.
SearchOutcome nelder_mead(const BoundedProblem& problem,
                          const std::vector<double>& start, double tolerance,
                          long max_evals);

// `starts` stratified points per dimension, jittered, seeded.
std::vector<std::vector<double>> latin_hypercube(int starts, int dims,
                                                 std::uint64_t seed);

}  // namespace detail

}  // namespace colstate::models
