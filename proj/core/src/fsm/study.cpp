#include "colstate/fsm/study.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "colstate/errors.hpp"
#include "colstate/fsm/repeat.hpp"
#include "colstate/fsm/sampling.hpp"
#include "colstate/fsm/spectral.hpp"
#include "colstate/fsm/word_matrix.hpp"
#include "colstate/rng.hpp"

namespace colstate::fsm {

double percentile(std::vector<double> values, double frac) {
    if (values.empty()) throw InputError("percentile of empty set");
    std::sort(values.begin(), values.end());
    const double pos = frac * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - t) + values[hi] * t;
}

StratifiedSample stratified_sample_by_radius(int p, const StratifyOptions& opts) {
    if (p < 1) throw InputError("state count must be >= 1");
    if (opts.bins < 1) throw InputError("bin count must be >= 1");

    auto engine = make_engine(opts.seed);
    StratifiedSample out;
    out.word = opts.word;
    out.bin_counts.assign(static_cast<std::size_t>(opts.bins), 0);

    // Loose tolerance for the screening pass; retained machines get a
    // tight re-measurement before bin assignment is final.
    SpectralOptions screen;
    screen.tolerance = 1e-6;
    screen.stall_iterations = 500;

    const long max_attempts = static_cast<long>(opts.bins) * opts.per_bin_attempts;
    int filled = 0;
    while (filled < opts.bins && out.attempts < max_attempts) {
        ++out.attempts;
        Machine m = sample_unifilar(p, engine);
        if (!m.is_strongly_connected()) continue;
        const Eigen::MatrixXd wm = word_matrix(m, opts.word).entries;
        const SpectralResult rough = spectral_radius(wm, screen);
        if (rough.nilpotent || rough.value <= 0.0 || rough.value >= 1.0) continue;
        int bin = static_cast<int>(rough.value * opts.bins);
        if (bin >= opts.bins) continue;
        if (out.bin_counts[static_cast<std::size_t>(bin)] >= opts.per_bin) continue;

        const SpectralResult tight = spectral_radius(wm);
        if (tight.nilpotent || tight.value <= 0.0 || tight.value >= 1.0) continue;
        bin = static_cast<int>(tight.value * opts.bins);
        if (bin >= opts.bins ||
            out.bin_counts[static_cast<std::size_t>(bin)] >= opts.per_bin)
            continue;

        ConvergenceSample sample;
        sample.machine_id = static_cast<std::uint64_t>(out.attempts);
        sample.machine = std::move(m);
        sample.spectral_radius = tight.value;
        sample.bin = bin;
        out.samples.push_back(std::move(sample));
        if (++out.bin_counts[static_cast<std::size_t>(bin)] == opts.per_bin) ++filled;
    }

    for (int b = 0; b < opts.bins; ++b) {
        if (out.bin_counts[static_cast<std::size_t>(b)] < opts.per_bin)
            out.unfilled_bins.push_back(b);
    }
    out.complete = out.unfilled_bins.empty();
    return out;
}

void compute_convergence_ratios(StratifiedSample& s, int offset_q, int horizon) {
    if (offset_q < 1 || horizon < 1)
        throw InputError("offset and horizon must be >= 1");
    for (auto& sample : s.samples) {
        const auto logs =
            repeat_log_profile(sample.machine, s.word, offset_q + horizon);
        sample.offset_q = offset_q;
        sample.plain_ratios.resize(static_cast<std::size_t>(horizon));
        sample.offset_ratios.resize(static_cast<std::size_t>(horizon));
        const double log_q = logs[static_cast<std::size_t>(offset_q - 1)];
        for (int k = 1; k <= horizon; ++k) {
            sample.plain_ratios[static_cast<std::size_t>(k - 1)] =
                std::exp(logs[static_cast<std::size_t>(k - 1)] / k) /
                sample.spectral_radius;
            sample.offset_ratios[static_cast<std::size_t>(k - 1)] =
                std::exp((logs[static_cast<std::size_t>(offset_q + k - 1)] - log_q) / k) /
                sample.spectral_radius;
        }
    }
}

StudyQuantiles offset_ratio_quantiles(const StratifiedSample& s, int k) {
    std::vector<double> values;
    values.reserve(s.samples.size());
    for (const auto& sample : s.samples) {
        if (k < 1 || static_cast<std::size_t>(k) > sample.offset_ratios.size())
            throw InputError("quantile index outside computed horizon");
        values.push_back(sample.offset_ratios[static_cast<std::size_t>(k - 1)]);
    }
    StudyQuantiles q;
    q.median = percentile(values, 0.5);
    q.lo1sigma = percentile(values, 0.16);
    q.hi1sigma = percentile(std::move(values), 0.84);
    return q;
}

std::string study_csv(const StratifiedSample& s) {
    const int bins = static_cast<int>(s.bin_counts.size());
    std::size_t horizon = 0;
    for (const auto& sample : s.samples)
        horizon = std::max(horizon, sample.offset_ratios.size());

    std::ostringstream os;
    os.precision(9);
    os << "rho_bin,k,median_C,median_Chat,lo1sigma,hi1sigma\n";
    for (int b = 0; b < bins; ++b) {
        std::vector<const ConvergenceSample*> members;
        for (const auto& sample : s.samples)
            if (sample.bin == b) members.push_back(&sample);
        if (members.empty()) continue;
        const double mid = (b + 0.5) / bins;
        for (std::size_t k = 1; k <= horizon; ++k) {
            std::vector<double> c, chat;
            for (const auto* sample : members) {
                if (k <= sample->plain_ratios.size()) {
                    c.push_back(sample->plain_ratios[k - 1]);
                    chat.push_back(sample->offset_ratios[k - 1]);
                }
            }
            if (c.empty()) continue;
            os << mid << ',' << k << ',' << percentile(c, 0.5) << ','
               << percentile(chat, 0.5) << ',' << percentile(chat, 0.16) << ','
               << percentile(chat, 0.84) << '\n';
        }
    }
    return os.str();
}

}  // namespace colstate::fsm
