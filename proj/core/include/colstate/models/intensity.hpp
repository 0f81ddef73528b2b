#pragma once

#include <vector>

#include "colstate/models/params.hpp"

namespace colstate::models {

// Survival of a cooperative run under the collective-state model:
// amplitude * prod_{i=1..k} (1 - p / i^index). k = 0 gives the bare
// amplitude. Evaluated in log space for long runs.
double cs_survival(const CsParams& params, long k);

// Termination probability after k-1 cooperative steps: p / k^index.
// Identical to 1 - cs_survival(k) / cs_survival(k-1).
double cs_hazard(const CsParams& params, long k);

// Expected-count intensity of a bracketed run of length k:
// amplitude * p/(k+1)^index * prod_{i=1..k} (1 - p/i^index).
// Equals cs_survival(k) - cs_survival(k+1) identically.
double cs_run_pmf(const CsParams& params, long k);

// Sum over components of amplitude_i * exp(-decay_i * k).
double nexp_run_pmf(const NExpParams& params, long k);

// amplitude * prod_{i=2..k} (1 - 1/i^index); empty product for k <= 1.
// With index = 1 the product telescopes to amplitude / k.
double limit_cs_survival(const LimitCsParams& params, long k);

// amplitude / (k+1)^index * prod_{i=2..k} (1 - 1/i^index), k >= 1.
double limit_cs_run_pmf(const LimitCsParams& params, long k);

// Packed parameter-vector layouts used by the fitter:
//   cs:       [amplitude, hazard_scale, index]
//   nexp:     [A_1, b_1, A_2, b_2, ...]
//   limit_cs: [amplitude, index]
int param_count(Family family, int order);

// Intensities for k = 1..k_max in one sweep. No box validation: the
// fitter and finite-difference probes may step slightly outside the
// prior box; values are computed wherever they are mathematically
// defined and may legitimately be zero or negative at such points.
std::vector<double> intensity_profile(Family family, const std::vector<double>& w,
                                      int k_max);

// d lambda(k) / d w_j for k = 1..k_max, one inner vector per parameter.
std::vector<std::vector<double>> intensity_gradient_profile(
    Family family, const std::vector<double>& w, int k_max);

}  // namespace colstate::models
