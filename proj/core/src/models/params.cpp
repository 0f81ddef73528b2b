#include "colstate/models/params.hpp"

#include <cmath>

#include "colstate/errors.hpp"

namespace colstate::models {

const char* family_name(Family f) {
    switch (f) {
        case Family::cs: return "CS";
        case Family::nexp: return "nEXP";
        case Family::limit_cs: return "limitCS";
    }
    return "?";
}

void CsParams::validate(const PriorBox& box) const {
    if (!(amplitude > 0.0)) throw DomainError("CS amplitude must be positive");
    if (hazard_scale < 0.0 || hazard_scale > box.hazard_scale_max)
        throw DomainError("CS hazard scale outside [0, " +
                          std::to_string(box.hazard_scale_max) + "]");
    if (index < 0.0) throw DomainError("CS index must be non-negative");
}

void NExpParams::validate(const PriorBox& box) const {
    if (amplitudes.size() != decay_rates.size() || amplitudes.empty())
        throw DomainError("nEXP needs matching, non-empty amplitude and rate lists");
    for (double a : amplitudes)
        if (a < 0.0 || !std::isfinite(a))
            throw DomainError("nEXP amplitudes must be non-negative");
    for (std::size_t i = 0; i < decay_rates.size(); ++i) {
        const double b = decay_rates[i];
        if (b < box.decay_rate_min || b > box.decay_rate_max)
            throw DomainError("nEXP decay rate outside prior box");
        if (i > 0 && !(decay_rates[i - 1] < b))
            throw DomainError("nEXP decay rates must be strictly increasing");
    }
}

void LimitCsParams::validate() const {
    if (!(amplitude > 0.0)) throw DomainError("amplitude must be positive");
    if (index < 0.0) throw DomainError("index must be non-negative");
}

}  // namespace colstate::models
