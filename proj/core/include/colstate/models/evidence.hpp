#pragma once

#include <cstdint>
#include <optional>

#include "colstate/models/fit.hpp"

namespace colstate::models {

// Area of the collective-state (amplitude, hazard-scale) prior region in
// units of the symbol count: integral of 1/(1-p) over [0, p_max],
// evaluated by adaptive quadrature (analytically log 200 at the default
// cap). Multiply by total_symbols for the absolute factor.
double cs_amplitude_area_factor(double hazard_scale_max = 0.995);

// Published area of the collective-state index prior region, adopted as
// a given constant: the index cap curve alpha(p) is pinned only by its
// integral.
inline constexpr double cs_index_area = 1.28841;

// Log prior volume of a model family's parameter box at symbol count N.
//   nEXP: amplitudes on the N-simplex (N^n / n!) times the decay box
//         width^n, divided by n! again for the sorted-rate convention.
//   CS:   cs_amplitude_area_factor * N * cs_index_area.
//   limit-CS: N times the index box width.
// nEXP orders above 6 are unsupported.
double log_prior_volume(Family family, int order, std::int64_t total_symbols,
                        const PriorBox& box = {});

// Laplace (saddle-point) log-evidence:
//   loglike - log(prior volume) - 0.5 log det(Hessian) + (d/2) log(2 pi).
// Requires a positive-definite Hessian; nullopt (with the fit's own flag)
// otherwise.
std::optional<double> laplace_evidence(const FitResult& fit,
                                       const PriorBox& box = {});

}  // namespace colstate::models
