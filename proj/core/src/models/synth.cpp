#include "colstate/models/synth.hpp"

#include <cmath>

#include "colstate/errors.hpp"
#include "colstate/rng.hpp"

namespace colstate::models {

namespace {

runstats::RunHistogram finalize(std::map<int, std::int64_t>&& counts,
                                long run_count) {
    runstats::RunHistogram hist;
    hist.counts = std::move(counts);
    hist.total_runs = run_count;
    std::int64_t c_symbols = 0;
    for (const auto& [k, n] : hist.counts) c_symbols += static_cast<std::int64_t>(k) * n;
    hist.total_symbols = c_symbols + run_count + 1;  // runs plus delimiters
    hist.delimiter_mode = runstats::DelimiterMode::r_only;
    return hist;
}

}  // namespace

runstats::RunHistogram synth_cs(double hazard_scale, double index, long run_count,
                                std::uint64_t seed) {
    if (hazard_scale < 0.0 || hazard_scale > 1.0)
        throw DomainError("hazard scale must lie in [0, 1]");
    if (index < 0.0) throw DomainError("index must be non-negative");
    if (run_count < 1) throw InputError("run count must be >= 1");

    // For index > 1 the survival has positive mass at infinity; the walk
    // is capped far beyond anything a fit would use.
    constexpr long kRunCap = 100000000;

    auto engine = make_engine(seed);
    std::map<int, std::int64_t> counts;
    for (long r = 0; r < run_count; ++r) {
        long k = 0;
        while (k < kRunCap) {
            const double hazard =
                hazard_scale * std::pow(static_cast<double>(k + 1), -index);
            if (uniform_double(engine) < hazard) break;
            ++k;
        }
        ++counts[static_cast<int>(k)];
    }
    return finalize(std::move(counts), run_count);
}

runstats::RunHistogram synth_nexp(const NExpParams& params, long run_count,
                                  std::uint64_t seed) {
    params.validate();
    if (run_count < 1) throw InputError("run count must be >= 1");

    const std::size_t n = params.amplitudes.size();
    std::vector<double> cumulative(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += params.amplitudes[i] / (1.0 - std::exp(-params.decay_rates[i]));
        cumulative[i] = total;
    }
    if (!(total > 0.0)) throw DomainError("mixture has zero total weight");

    auto engine = make_engine(seed);
    std::map<int, std::int64_t> counts;
    for (long r = 0; r < run_count; ++r) {
        const double u = uniform_double(engine) * total;
        std::size_t comp = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (u < cumulative[i]) {
                comp = i;
                break;
            }
        }
        // Geometric failures with continuation e^{-b}.
        const double v = uniform_open(engine);
        const long k =
            static_cast<long>(std::floor(std::log(v) / -params.decay_rates[comp]));
        ++counts[static_cast<int>(k)];
    }
    return finalize(std::move(counts), run_count);
}

}  // namespace colstate::models
