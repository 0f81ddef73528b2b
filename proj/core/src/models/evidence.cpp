#include "colstate/models/evidence.hpp"

#include <cmath>

#include "colstate/errors.hpp"

namespace colstate::models {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double cs_amplitude_area_factor(double hazard_scale_max) {
    return integrate([](double p) { return 1.0 / (1.0 - p); }, 0.0,
                     hazard_scale_max, 1e-12);
}

double log_prior_volume(Family family, int order, std::int64_t total_symbols,
                        const PriorBox& box) {
    if (total_symbols <= 0)
        throw InputError("prior volume needs a positive symbol count");
    const double n_sym = static_cast<double>(total_symbols);
    switch (family) {
        case Family::cs: {
            // The index area constant is published for the standard
            // 0.995 cap; the amplitude factor follows the box.
            const double area = cs_amplitude_area_factor(box.hazard_scale_max);
            return std::log(area) + std::log(n_sym) + std::log(cs_index_area);
        }
        case Family::nexp: {
            if (order < 1 || order > 6)
                throw InputError("nEXP prior volume supported for 1..6 components");
            const double n = order;
            const double width = box.decay_rate_max - box.decay_rate_min;
            return n * std::log(n_sym) - std::lgamma(n + 1.0) +
                   n * std::log(width) - std::lgamma(n + 1.0);
        }
        case Family::limit_cs:
            return std::log(n_sym) + std::log(box.index_max);
    }
    throw InputError("unknown model family");
}

std::optional<double> laplace_evidence(const FitResult& fit, const PriorBox& box) {
    if (!fit.hessian_pd) return std::nullopt;
    const int d = static_cast<int>(fit.params.size());
    Eigen::LLT<Eigen::MatrixXd> llt(fit.hessian);
    if (llt.info() != Eigen::Success) return std::nullopt;
    double half_log_det = 0.0;
    const Eigen::MatrixXd l = llt.matrixL();
    for (int i = 0; i < d; ++i) half_log_det += std::log(l(i, i));
    const double log_volume =
        log_prior_volume(fit.family, fit.order, fit.total_symbols, box);
    return fit.log_like - log_volume - half_log_det +
           0.5 * d * std::log(2.0 * M_PI);
}

}  // namespace colstate::models
