#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "colstate/runstats/sequence.hpp"

namespace colstate::runstats {

enum class DelimiterMode { r_only, r_or_n };

// Counts of delimiter-bracketed cooperative runs: counts[k] is the
// number of occurrences of <delim> C^k <delim>. Bracketing makes the
// statistic prefix- and suffix-free, so counts at different k are not
// shift-correlated the way raw substring counts are.
struct RunHistogram {
    std::map<int, std::int64_t> counts;
    std::int64_t total_runs = 0;     // bracketed runs, k = 0 included
    std::int64_t total_symbols = 0;  // length of the source sequence
    DelimiterMode delimiter_mode = DelimiterMode::r_only;

    std::int64_t count_at(int k) const {
        auto it = counts.find(k);
        return it == counts.end() ? 0 : it->second;
    }
    int max_k() const;
    // Runs with k >= 1; adjacent-delimiter pairs are diagnostics only.
    std::int64_t fitted_run_total() const;
    void validate() const;
};

// Runs touching the sequence boundaries have no bracketing delimiter and
// are excluded. k = 0 (adjacent delimiters) is recorded but excluded
// from fits downstream. Three-symbol sequences require r_or_n mode.
RunHistogram count_runs(const SymbolSequence& seq, DelimiterMode mode);

struct RunProbability {
    std::map<int, double> probability;   // counts[k] / total_symbols
    std::vector<int> heavy_ks;           // counts[k] not << total_symbols
};

// Point estimate P(<delim> C^k <delim>) = N_k / N; flags any k whose
// count is too large a fraction of N for the independence assumption.
RunProbability empirical_run_probability(const RunHistogram& hist);

// CSV: comment header "# total_symbols=N total_runs=M mode=R|RN" then
// "k,count" lines.
std::string histogram_csv(const RunHistogram& hist);
RunHistogram histogram_from_csv_text(const std::string& text);
RunHistogram load_histogram(const std::string& path);
void save_histogram(const RunHistogram& hist, const std::string& path);

}  // namespace colstate::runstats
