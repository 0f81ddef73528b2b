#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colstate/models/evidence.hpp"

namespace colstate::models {

// Decimal significance band of a log-evidence difference: magnitude
// floor(|delta| / ln 10), direction by sign, undetermined below two
// decades.
struct SignificanceBand {
    int magnitude = 0;
    int direction = 0;  // +1 favors CS, -1 favors nEXP
    bool determined = false;

    // "1e-8" when CS is favored, ">1e7" when nEXP is, "no-det" otherwise.
    std::string str() const;
};

SignificanceBand significance_band(double delta_evidence);

struct SelectOptions {
    int n_max = 5;  // largest nEXP component count tried
    FitOptions fit;
};

struct ModelEntry {
    Family family = Family::cs;
    int order = 1;
    std::optional<FitResult> fit;  // empty when the fit failed
    std::string error;
};

struct SelectReport {
    std::string page;
    std::int64_t total_symbols = 0;
    std::vector<ModelEntry> entries;  // CS first, then nEXP by order
    std::optional<int> best_nexp_order;
    std::optional<double> delta_evidence;  // E_CS - E_best_nEXP
    SignificanceBand band;

    std::string to_json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

// Fits CS and nEXP for n = 1..n_max, keeps the highest-evidence nEXP,
// and reports the evidence difference. Individual fit failures are
// recorded and the table stays partial rather than aborting.
SelectReport select_model(const runstats::RunHistogram& hist,
                          const std::string& page, const SelectOptions& opts = {});

// JSON object for one fitted (or failed) model, the same shape as the
// elements of a select report's "fits" array.
std::string model_entry_json(const ModelEntry& entry);

}  // namespace colstate::models
