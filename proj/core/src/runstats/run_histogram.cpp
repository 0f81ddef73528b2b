#include "colstate/runstats/run_histogram.hpp"

#include <fstream>
#include <sstream>

#include "colstate/errors.hpp"

namespace colstate::runstats {

int RunHistogram::max_k() const {
    return counts.empty() ? 0 : counts.rbegin()->first;
}

std::int64_t RunHistogram::fitted_run_total() const {
    std::int64_t total = 0;
    for (const auto& [k, n] : counts)
        if (k >= 1) total += n;
    return total;
}

void RunHistogram::validate() const {
    std::int64_t occupied = 0;
    std::int64_t runs = 0;
    for (const auto& [k, n] : counts) {
        if (k < 0) throw InputError("negative run length in histogram");
        if (n < 0) throw InputError("negative count in histogram");
        occupied += (k + 1) * n;  // run body plus its closing delimiter
        runs += n;
    }
    if (runs != total_runs) throw InputError("total_runs inconsistent with counts");
    if (occupied > total_symbols)
        throw InputError("counts occupy more symbols than the sequence holds");
}

RunHistogram count_runs(const SymbolSequence& seq, DelimiterMode mode) {
    if (seq.symbols.empty()) throw InputError("cannot count runs of an empty sequence");
    if (mode == DelimiterMode::r_only &&
        seq.symbols.find('N') != std::string::npos)
        throw InputError("three-symbol sequence requires the R-or-N delimiter mode");

    auto is_delim = [mode](char c) {
        return c == 'R' || (mode == DelimiterMode::r_or_n && c == 'N');
    };

    RunHistogram hist;
    hist.delimiter_mode = mode;
    hist.total_symbols = static_cast<std::int64_t>(seq.symbols.size());

    long prev_delim = -1;
    for (long i = 0; i < static_cast<long>(seq.symbols.size()); ++i) {
        if (!is_delim(seq.symbols[static_cast<std::size_t>(i)])) continue;
        if (prev_delim >= 0) {
            const int k = static_cast<int>(i - prev_delim - 1);
            ++hist.counts[k];
            ++hist.total_runs;
        }
        prev_delim = i;
    }
    return hist;
}

RunProbability empirical_run_probability(const RunHistogram& hist) {
    if (hist.total_symbols <= 0)
        throw InputError("histogram has no symbols to normalize by");
    RunProbability out;
    const double n = static_cast<double>(hist.total_symbols);
    for (const auto& [k, c] : hist.counts) {
        out.probability[k] = static_cast<double>(c) / n;
        if (static_cast<double>(c) > 0.01 * n) out.heavy_ks.push_back(k);
    }
    return out;
}

std::string histogram_csv(const RunHistogram& hist) {
    std::ostringstream os;
    os << "# total_symbols=" << hist.total_symbols
       << " total_runs=" << hist.total_runs << " mode="
       << (hist.delimiter_mode == DelimiterMode::r_only ? "R" : "RN") << "\n";
    os << "k,count\n";
    for (const auto& [k, c] : hist.counts) os << k << ',' << c << '\n';
    return os.str();
}

RunHistogram histogram_from_csv_text(const std::string& text) {
    std::istringstream in(text);
    RunHistogram hist;
    std::string line;
    bool have_meta = false;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string token;
            while (meta >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = token.substr(0, eq);
                const std::string value = token.substr(eq + 1);
                if (key == "total_symbols") hist.total_symbols = std::stoll(value);
                else if (key == "total_runs") hist.total_runs = std::stoll(value);
                else if (key == "mode")
                    hist.delimiter_mode = value == "RN" ? DelimiterMode::r_or_n
                                                        : DelimiterMode::r_only;
            }
            have_meta = true;
            continue;
        }
        if (line == "k,count") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InputError("histogram line " + std::to_string(line_no) +
                             ": expected k,count");
        try {
            const int k = std::stoi(line.substr(0, comma));
            const std::int64_t c = std::stoll(line.substr(comma + 1));
            hist.counts[k] += c;
        } catch (const std::exception&) {
            throw InputError("histogram line " + std::to_string(line_no) +
                             ": bad number");
        }
    }
    if (!have_meta)
        throw InputError("histogram file missing '# total_symbols=... ' header");
    hist.validate();
    return hist;
}

RunHistogram load_histogram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open histogram file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return histogram_from_csv_text(buf.str());
}

void save_histogram(const RunHistogram& hist, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write histogram file: " + path);
    out << histogram_csv(hist);
}

}  // namespace colstate::runstats
