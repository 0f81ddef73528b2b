#include "colstate/models/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "colstate/errors.hpp"
#include "colstate/rng.hpp"

namespace colstate::models {

namespace detail {

namespace {

double to_unit(double x, double lo, double hi, bool log_scale) {
    if (log_scale) return std::log(x / lo) / std::log(hi / lo);
    return (x - lo) / (hi - lo);
}

double from_unit(double u, double lo, double hi, bool log_scale) {
    if (log_scale) return lo * std::pow(hi / lo, u);
    return lo + u * (hi - lo);
}

}  // namespace

std::vector<std::vector<double>> latin_hypercube(int starts, int dims,
                                                 std::uint64_t seed) {
    auto engine = make_engine(seed);
    std::vector<std::vector<double>> points(
        static_cast<std::size_t>(starts),
        std::vector<double>(static_cast<std::size_t>(dims)));
    std::vector<int> strata(static_cast<std::size_t>(starts));
    for (int d = 0; d < dims; ++d) {
        std::iota(strata.begin(), strata.end(), 0);
        for (int i = starts - 1; i > 0; --i) {
            const auto j = uniform_index(engine, static_cast<std::uint64_t>(i + 1));
            std::swap(strata[static_cast<std::size_t>(i)], strata[j]);
        }
        for (int s = 0; s < starts; ++s) {
            const double jitter = uniform_double(engine);
            points[static_cast<std::size_t>(s)][static_cast<std::size_t>(d)] =
                (strata[static_cast<std::size_t>(s)] + jitter) / starts;
        }
    }
    return points;
}

SearchOutcome nelder_mead(const BoundedProblem& problem,
                          const std::vector<double>& start, double tolerance,
                          long max_evals) {
    const int d = static_cast<int>(start.size());
    SearchOutcome out;

    auto clamp_unit = [](std::vector<double>& u) {
        for (double& x : u) x = std::clamp(x, 0.0, 1.0);
    };
    auto evaluate = [&](const std::vector<double>& u) {
        std::vector<double> w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            w[i] = from_unit(u[i], problem.lower[i], problem.upper[i],
                             problem.log_scale[i]);
        ++out.evals;
        return problem.objective(w);
    };

    struct Vertex {
        std::vector<double> u;
        double f;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(static_cast<std::size_t>(d) + 1);
    simplex.push_back({start, evaluate(start)});
    for (int i = 0; i < d; ++i) {
        auto u = start;
        const double step = 0.08;
        u[static_cast<std::size_t>(i)] +=
            u[static_cast<std::size_t>(i)] + step <= 1.0 ? step : -step;
        clamp_unit(u);
        simplex.push_back({u, evaluate(u)});
    }
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::sort(simplex.begin(), simplex.end(), by_value);

    while (out.evals < max_evals) {
        const double best = simplex.front().f;
        const double worst = simplex.back().f;
        if (std::isfinite(best) &&
            worst - best <= tolerance * (std::abs(best) + 1.0)) {
            out.converged = true;
            break;
        }

        std::vector<double> centroid(static_cast<std::size_t>(d), 0.0);
        for (int v = 0; v < d; ++v)
            for (int i = 0; i < d; ++i)
                centroid[static_cast<std::size_t>(i)] +=
                    simplex[static_cast<std::size_t>(v)].u[static_cast<std::size_t>(i)] / d;

        auto blend = [&](double coeff) {
            std::vector<double> u(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                u[static_cast<std::size_t>(i)] =
                    centroid[static_cast<std::size_t>(i)] +
                    coeff * (centroid[static_cast<std::size_t>(i)] -
                             simplex.back().u[static_cast<std::size_t>(i)]);
            clamp_unit(u);
            return u;
        };

        auto reflected = blend(1.0);
        const double fr = evaluate(reflected);
        if (fr < simplex.front().f) {
            auto expanded = blend(2.0);
            const double fe = evaluate(expanded);
            simplex.back() = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
        } else if (fr < simplex[static_cast<std::size_t>(d) - 1].f) {
            simplex.back() = {reflected, fr};
        } else {
            auto contracted = blend(fr < simplex.back().f ? 0.5 : -0.5);
            const double fc = evaluate(contracted);
            if (fc < std::min(fr, simplex.back().f)) {
                simplex.back() = {contracted, fc};
            } else {
                // Shrink toward the best vertex.
                for (std::size_t v = 1; v < simplex.size(); ++v) {
                    for (int i = 0; i < d; ++i)
                        simplex[v].u[static_cast<std::size_t>(i)] =
                            0.5 * (simplex[v].u[static_cast<std::size_t>(i)] +
                                   simplex[0].u[static_cast<std::size_t>(i)]);
                    simplex[v].f = evaluate(simplex[v].u);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_value);
    }

    out.point.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        out.point[static_cast<std::size_t>(i)] =
            from_unit(simplex.front().u[static_cast<std::size_t>(i)],
                      problem.lower[static_cast<std::size_t>(i)],
                      problem.upper[static_cast<std::size_t>(i)],
                      problem.log_scale[static_cast<std::size_t>(i)]);
    out.value = simplex.front().f;
    return out;
}

}  // namespace detail

Eigen::MatrixXd finite_difference_hessian(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double step_scale) {
    const int d = static_cast<int>(x.size());
    std::vector<double> h(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        h[i] = step_scale * std::max(1e-5, 1e-4 * std::abs(x[i]));

    Eigen::MatrixXd hess(d, d);
    const double f0 = f(x);
    for (int i = 0; i < d; ++i) {
        auto xp = x, xm = x;
        xp[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>(i)];
        xm[static_cast<std::size_t>(i)] -= h[static_cast<std::size_t>(i)];
        hess(i, i) = (f(xp) - 2.0 * f0 + f(xm)) /
                     (h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < d; ++j) {
            auto xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>(i)];
            xpp[static_cast<std::size_t>(j)] += h[static_cast<std::size_t>(j)];
            xpm[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>(i)];
            xpm[static_cast<std::size_t>(j)] -= h[static_cast<std::size_t>(j)];
            xmp[static_cast<std::size_t>(i)] -= h[static_cast<std::size_t>(i)];
            xmp[static_cast<std::size_t>(j)] += h[static_cast<std::size_t>(j)];
            xmm[static_cast<std::size_t>(i)] -= h[static_cast<std::size_t>(i)];
            xmm[static_cast<std::size_t>(j)] -= h[static_cast<std::size_t>(j)];
            hess(i, j) = hess(j, i) =
                (f(xpp) - f(xpm) - f(xmp) + f(xmm)) /
                (4.0 * h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(j)]);
        }
    }
    return hess;
}

namespace {

struct FitBox {
    std::vector<double> lower, upper;
    std::vector<bool> log_scale;
};

// Search box for the optimizer. Amplitudes carry count units and are
// searched on a log scale; their ceiling is generous because the prior
// volume used for evidence is normalized separately.
FitBox fit_box(Family family, int order, const CountData& data,
               const PriorBox& box) {
    const double scale = std::max<double>(static_cast<double>(data.total()), 1.0);
    FitBox fb;
    switch (family) {
        case Family::cs:
            // lambda(1) = A p (1 - p) / 2^index: A can sit well above the
            // count scale when p approaches its cap.
            fb.lower = {1e-3, 1e-9, 0.0};
            fb.upper = {400.0 * scale, box.hazard_scale_max, box.index_max};
            fb.log_scale = {true, false, false};
            break;
        case Family::nexp:
            for (int i = 0; i < order; ++i) {
                fb.lower.insert(fb.lower.end(), {1e-3, box.decay_rate_min});
                fb.upper.insert(fb.upper.end(), {16.0 * scale, box.decay_rate_max});
                fb.log_scale.insert(fb.log_scale.end(), {true, false});
            }
            break;
        case Family::limit_cs:
            fb.lower = {1e-3, 1e-3};
            fb.upper = {64.0 * scale, box.index_max};
            fb.log_scale = {true, false};
            break;
    }
    return fb;
}

int timescale_params(Family family, int order) {
    switch (family) {
        case Family::cs: return 2;  // hazard scale and index both shape decay
        case Family::nexp: return order;
        case Family::limit_cs: return 1;
    }
    return 0;
}

// Canonical nEXP ordering: components sorted by decay rate ascending,
// exact ties separated by one ulp so the ordering stays strict.
void canonicalize(Family family, std::vector<double>& w) {
    if (family != Family::nexp) return;
    const std::size_t n = w.size() / 2;
    std::vector<std::pair<double, double>> comps(n);
    for (std::size_t i = 0; i < n; ++i) comps[i] = {w[2 * i + 1], w[2 * i]};
    std::sort(comps.begin(), comps.end());
    for (std::size_t i = 1; i < n; ++i) {
        if (comps[i].first <= comps[i - 1].first)
            comps[i].first = std::nextafter(comps[i - 1].first, 2.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        w[2 * i + 1] = comps[i].first;
        w[2 * i] = comps[i].second;
    }
}

}  // namespace

CsParams FitResult::cs_params() const {
    return CsParams{params[0], params[1], params[2]};
}

NExpParams FitResult::nexp_params() const {
    NExpParams p;
    for (std::size_t i = 0; i + 1 < params.size(); i += 2) {
        p.amplitudes.push_back(params[i]);
        p.decay_rates.push_back(params[i + 1]);
    }
    return p;
}

LimitCsParams FitResult::limit_cs_params() const {
    return LimitCsParams{params[0], params[1]};
}

FitResult fit_mle(const CountData& data, Family family, int order,
                  const FitOptions& opts) {
    if (family != Family::nexp) order = 1;
    if (order < 1) throw InputError("component count must be >= 1");
    const int d = param_count(family, order);
    const int needed = 2 * timescale_params(family, order);
    if (data.distinct_positive_k() < needed) {
        throw FitError(std::string(family_name(family)) +
                       " fit needs at least " + std::to_string(needed) +
                       " distinct run lengths with positive counts, have " +
                       std::to_string(data.distinct_positive_k()));
    }

    const FitBox fb = fit_box(family, order, data, opts.box);
    detail::BoundedProblem problem;
    problem.lower = fb.lower;
    problem.upper = fb.upper;
    problem.log_scale = fb.log_scale;
    problem.objective = [&](const std::vector<double>& w) {
        const LogLike ll = poisson_loglike(data, family, w);
        return -ll.value;
    };

    const long evals_cap =
        opts.max_evals_per_start > 0 ? opts.max_evals_per_start : 600L * d;
    const auto starts = detail::latin_hypercube(
        opts.starts, d, derive_seed(opts.seed, static_cast<std::uint64_t>(d) * 131 +
                                                   static_cast<std::uint64_t>(family)));

    FitResult result;
    result.family = family;
    result.order = order;
    result.k_max = data.k_max();
    result.total_symbols = data.total_symbols;

    std::vector<detail::SearchOutcome> outcomes(starts.size());
    const int workers =
        std::clamp(opts.threads, 1, static_cast<int>(starts.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < starts.size(); ++i)
            outcomes[i] =
                detail::nelder_mead(problem, starts[i], opts.tolerance, evals_cap);
    } else {
        std::atomic<std::size_t> next{0};
        auto run = [&] {
            for (std::size_t i = next.fetch_add(1); i < starts.size();
                 i = next.fetch_add(1))
                outcomes[i] = detail::nelder_mead(problem, starts[i],
                                                  opts.tolerance, evals_cap);
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < workers; ++t) pool.emplace_back(run);
        run();
        for (auto& t : pool) t.join();
    }

    // Merge in start order; ties on the objective keep the earliest.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& outcome : outcomes) {
        if (outcome.converged) ++result.converged_starts;
        if (outcome.converged && outcome.value < best) {
            best = outcome.value;
            result.params = outcome.point;
        }
    }
    if (result.converged_starts == 0 || !std::isfinite(best))
        throw FitError(std::string(family_name(family)) + " fit: none of " +
                       std::to_string(opts.starts) + " starts converged");
    result.converged = true;
    result.log_like = -best;
    canonicalize(family, result.params);

    // A parameter pinned to the fit box is not a stationary point, so
    // curvature there means nothing (dead mixture components end up
    // like this). Checked in unit coordinates so every scale is alike.
    for (int i = 0; i < d; ++i) {
        const double u = detail::to_unit(
            result.params[static_cast<std::size_t>(i)],
            fb.lower[static_cast<std::size_t>(i)], fb.upper[static_cast<std::size_t>(i)],
            fb.log_scale[static_cast<std::size_t>(i)]);
        if (u <= 1e-6 || u >= 1.0 - 1e-6) result.boundary_optimum = true;
    }

    // Hessian of -loglike at the optimum; the probe may step slightly
    // outside the prior box, which the intensity code tolerates.
    auto negll = [&](const std::vector<double>& w) {
        return -poisson_loglike(data, family, w).value;
    };
    // Box-relative Jacobian dw/du, used to judge curvature against the
    // prior scale: a direction whose posterior is not narrower than the
    // box itself is unresolved and invalidates the Laplace step.
    Eigen::VectorXd jac(d);
    for (int i = 0; i < d; ++i) {
        const auto s = static_cast<std::size_t>(i);
        jac(i) = fb.log_scale[s]
                     ? result.params[s] * std::log(fb.upper[s] / fb.lower[s])
                     : fb.upper[s] - fb.lower[s];
    }
    for (double step_scale : {1.0, 10.0}) {
        const Eigen::MatrixXd h =
            finite_difference_hessian(negll, result.params, step_scale);
        if (!h.allFinite()) continue;
        result.hessian = h;
        if (result.boundary_optimum) break;
        Eigen::LLT<Eigen::MatrixXd> llt(h);
        if (llt.info() != Eigen::Success) continue;
        const Eigen::MatrixXd h_unit = jac.asDiagonal() * h * jac.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_unit);
        if (es.eigenvalues().minCoeff() < 1.0) continue;
        result.hessian_pd = true;
        const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(d, d));
        result.std_errors.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            result.std_errors[static_cast<std::size_t>(i)] =
                std::sqrt(std::max(cov(i, i), 0.0));
        break;
    }
    return result;
}

FitResult fit_mle(const runstats::RunHistogram& hist, Family family, int order,
                  const FitOptions& opts) {
    return fit_mle(CountData::from_histogram(hist, opts.k_max), family, order, opts);
}

}  // namespace colstate::models
