#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "colstate/errors.hpp"
#include "colstate/fsm/machine.hpp"
#include "colstate/fsm/sampling.hpp"
#include "colstate/ingest/coarse_grain.hpp"
#include "colstate/rng.hpp"
#include "colstate/runstats/augment.hpp"
#include "colstate/runstats/run_histogram.hpp"
#include "colstate/runstats/sequence.hpp"

using namespace colstate;
using namespace colstate::runstats;

namespace {

SymbolSequence seq(std::string symbols,
                   AlphabetMode mode = AlphabetMode::two_symbol) {
    SymbolSequence s;
    s.symbols = std::move(symbols);
    s.mode = mode;
    s.validate();
    return s;
}

// Reference count: overlapping scan for <delim> C^k <delim> substrings.
std::map<int, std::int64_t> naive_counts(const std::string& s, bool n_delimits) {
    auto is_delim = [&](char c) { return c == 'R' || (n_delimits && c == 'N'); };
    std::map<int, std::int64_t> out;
    for (std::size_t start = 0; start < s.size(); ++start) {
        if (!is_delim(s[start])) continue;
        for (std::size_t end = start + 1; end < s.size(); ++end) {
            if (is_delim(s[end])) {
                ++out[static_cast<int>(end - start - 1)];
                break;
            }
            if (s[end] != 'C') break;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("sequence validation") {
    CHECK_NOTHROW(seq("CCRCC").validate());
    CHECK_THROWS_AS(seq("CXR"), InputError);
    CHECK_THROWS_AS(seq("NCC", AlphabetMode::three_symbol), InputError);
    CHECK_THROWS_AS(seq("CNNC", AlphabetMode::three_symbol), InputError);
    CHECK_THROWS_AS(seq("CNC"), InputError);  // N needs the three-symbol alphabet
    CHECK_NOTHROW(seq("CNCNR", AlphabetMode::three_symbol).validate());
}

TEST_CASE("count_runs on the worked single-day example") {
    const auto hist = count_runs(seq("CCRCCRCCCCC"), DelimiterMode::r_only);
    CHECK(hist.counts == std::map<int, std::int64_t>{{2, 1}});
    CHECK(hist.total_runs == 1);
    CHECK(hist.total_symbols == 11);
    CHECK_NOTHROW(hist.validate());
}

TEST_CASE("count_runs by hand enumeration") {
    const auto hist = count_runs(seq("RCRCCRCR"), DelimiterMode::r_only);
    CHECK(hist.counts == std::map<int, std::int64_t>{{1, 2}, {2, 1}});
}

TEST_CASE("count_runs in R-or-N mode on the augmented example") {
    const auto hist = count_runs(seq("CNCNRNCNCNRNCCCCC", AlphabetMode::three_symbol),
                                 DelimiterMode::r_or_n);
    CHECK(hist.counts == std::map<int, std::int64_t>{{0, 4}, {1, 3}});
    CHECK(hist.fitted_run_total() == 3);
}

TEST_CASE("count_runs without enough delimiters yields no runs") {
    CHECK(count_runs(seq("CCCCC"), DelimiterMode::r_only).counts.empty());
    CHECK(count_runs(seq("CCRCC"), DelimiterMode::r_only).counts.empty());
    const auto double_r = count_runs(seq("RR"), DelimiterMode::r_only);
    CHECK(double_r.counts == std::map<int, std::int64_t>{{0, 1}});
    CHECK(double_r.fitted_run_total() == 0);  // adjacent delimiters never fit
}

TEST_CASE("count_runs rejects empty input and mismatched modes") {
    SymbolSequence empty;
    CHECK_THROWS_AS(count_runs(empty, DelimiterMode::r_only), InputError);
    CHECK_THROWS_AS(count_runs(seq("CNC", AlphabetMode::three_symbol),
                               DelimiterMode::r_only),
                    InputError);
}

TEST_CASE("count_runs equals the naive overlapping substring scan") {
    auto eng = make_engine(101);
    for (int trial = 0; trial < 100; ++trial) {
        std::string s;
        const auto len = 2 + uniform_index(eng, 60);
        bool three = uniform_index(eng, 2) == 0;
        for (std::size_t i = 0; i < len; ++i) {
            const auto roll = uniform_index(eng, three ? 5 : 3);
            if (roll == 0) s.push_back('R');
            else if (three && roll == 1 && !s.empty() && s.back() != 'N')
                s.push_back('N');
            else s.push_back('C');
        }
        const auto sequence =
            seq(s, three ? AlphabetMode::three_symbol : AlphabetMode::two_symbol);
        const auto mode = three ? DelimiterMode::r_or_n : DelimiterMode::r_only;
        const auto hist = count_runs(sequence, mode);
        CHECK(hist.counts == naive_counts(s, three));
        CHECK_NOTHROW(hist.validate());
    }
}

TEST_CASE("reconstruction: run lengths plus delimiters cover the sequence") {
    auto eng = make_engine(107);
    for (int trial = 0; trial < 50; ++trial) {
        std::string s;
        const auto len = 1 + uniform_index(eng, 80);
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(uniform_index(eng, 3) == 0 ? 'R' : 'C');
        // Total C's inside maximal runs plus R count equals the length.
        std::int64_t c_total = 0, r_total = 0;
        std::int64_t current = 0;
        for (char c : s) {
            if (c == 'C') ++current;
            else {
                c_total += current;
                current = 0;
                ++r_total;
            }
        }
        c_total += current;
        CHECK(c_total + r_total == static_cast<std::int64_t>(s.size()));
    }
}

TEST_CASE("empirical run probability") {
    const auto hist = count_runs(seq("CCRCCRCCCCC"), DelimiterMode::r_only);
    const auto prob = empirical_run_probability(hist);
    CHECK(prob.probability.at(2) == doctest::Approx(1.0 / 11.0));
    CHECK(prob.heavy_ks == std::vector<int>{2});  // 1 of 11 is not << N

    RunHistogram empty;
    empty.total_symbols = 10;
    CHECK(empirical_run_probability(empty).probability.empty());
}

TEST_CASE("geometric source: run probabilities follow P(R)^2 q^k") {
    // One-state machine emitting C with probability 0.9: bracketed-run
    // probabilities are 0.01 * 0.9^k.
    const auto m = fsm::single_state_machine(0.9);
    const std::string symbols = fsm::simulate(m, 1000000, 12);
    SymbolSequence s;
    s.symbols = symbols;
    const auto hist = count_runs(s, DelimiterMode::r_only);
    const auto prob = empirical_run_probability(hist);
    const double n = static_cast<double>(hist.total_symbols);
    for (int k = 0; k <= 20; ++k) {
        const double expected = 0.01 * std::pow(0.9, k);
        const double se = std::sqrt(expected * (1.0 - expected) / n);
        const auto it = prob.probability.find(k);
        const double observed = it == prob.probability.end() ? 0.0 : it->second;
        CHECK(std::abs(observed - expected) <= 3.0 * se);
    }
}

TEST_CASE("three-symbol runs refine the two-symbol runs") {
    // Dropping the N's from the augmented sequence must reproduce the
    // plain sequence, so every R-or-N run is a fragment of an R-only
    // run.
    auto eng = make_engine(113);
    for (int trial = 0; trial < 50; ++trial) {
        ingest::PageHistory h;
        h.title = "t";
        const int n = 4 + static_cast<int>(uniform_index(eng, 40));
        for (int i = 0; i < n; ++i) {
            ingest::RevisionRecord r;
            std::ostringstream ts;
            ts << "2006-01-01T" << (10 + i / 60) << ":" << std::setw(2)
               << std::setfill('0') << (i % 60) << ":00Z";
            r.timestamp = ts.str();
            r.epoch_seconds = ingest::parse_iso8601(r.timestamp);
            r.user = "U" + std::to_string(uniform_index(eng, 3));
            // Small hash pool so genuine reverts occur.
            r.sha1 = std::string(39, '0') +
                     static_cast<char>('0' + uniform_index(eng, 8));
            h.records.push_back(r);
        }
        const auto two = ingest::coarse_grain(h);
        const auto three = augment_user_changes(h);

        std::string stripped = three.symbols;
        stripped.erase(std::remove(stripped.begin(), stripped.end(), 'N'),
                       stripped.end());
        REQUIRE(stripped == two.symbols);

        const auto hist_two = count_runs(two, DelimiterMode::r_only);
        const auto hist_three = count_runs(three, DelimiterMode::r_or_n);
        // Fragments can only be more numerous, never longer than the
        // maximal C block (boundary blocks included) they subdivide.
        std::size_t longest_block = 0, current = 0;
        for (char c : two.symbols) {
            current = c == 'C' ? current + 1 : 0;
            longest_block = std::max(longest_block, current);
        }
        CHECK(hist_three.max_k() <= static_cast<int>(longest_block));
        CHECK(hist_three.total_runs >= hist_two.total_runs);
    }
}

TEST_CASE("R symbols replay as strictly-earlier hash matches") {
    auto eng = make_engine(127);
    for (int trial = 0; trial < 30; ++trial) {
        ingest::PageHistory h;
        h.title = "t";
        const int n = 3 + static_cast<int>(uniform_index(eng, 30));
        for (int i = 0; i < n; ++i) {
            ingest::RevisionRecord r;
            std::ostringstream ts;
            ts << "2006-01-01T10:" << std::setw(2) << std::setfill('0') << (i % 60)
               << ":" << std::setw(2) << std::setfill('0') << (i / 60) << "Z";
            r.timestamp = ts.str();
            r.epoch_seconds = ingest::parse_iso8601(r.timestamp);
            r.user = "U" + std::to_string(uniform_index(eng, 4));
            r.sha1 = std::string(39, '0') +
                     static_cast<char>('0' + uniform_index(eng, 6));
            h.records.push_back(r);
        }
        const auto detail = ingest::coarse_grain_detailed(h);
        std::set<std::string> seen;
        for (std::size_t i = 0; i < detail.retained.size(); ++i) {
            const auto& rec = h.records[detail.retained[i]];
            if (detail.sequence.symbols[i] == 'R') CHECK(seen.count(rec.sha1) == 1);
            seen.insert(rec.sha1);
        }
        CHECK(detail.sequence.symbols.size() == detail.retained.size());
    }
}

TEST_CASE("histogram CSV round trip") {
    auto hist = count_runs(seq("RCRCCRCR"), DelimiterMode::r_only);
    const std::string text = histogram_csv(hist);
    CHECK(text.find("# total_symbols=8 total_runs=3 mode=R") == 0);
    const auto back = histogram_from_csv_text(text);
    CHECK(back.counts == hist.counts);
    CHECK(back.total_symbols == hist.total_symbols);
    CHECK(back.total_runs == hist.total_runs);
    CHECK(back.delimiter_mode == hist.delimiter_mode);
}
