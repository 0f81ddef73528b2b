#include "colstate/ingest/tsv.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "colstate/errors.hpp"

namespace colstate::ingest {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

}  // namespace

PageHistory parse_tsv(std::istream& in, const std::string& title) {
    PageHistory history;
    history.title = title;

    std::string line;
    if (!std::getline(in, line)) throw InputError("TSV input missing header row");

    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 4) {
            std::ostringstream os;
            os << "TSV line " << line_no << ": expected 4 tab-separated columns, got "
               << fields.size();
            throw InputError(os.str());
        }
        RevisionRecord rec;
        rec.timestamp = fields[0];
        try {
            rec.epoch_seconds = parse_iso8601(rec.timestamp);
        } catch (const InputError& e) {
            throw InputError("TSV line " + std::to_string(line_no) + ": " + e.what());
        }
        rec.user = fields[1];
        rec.sha1 = normalize_sha1(fields[2]);
        if (!rec.sha1.empty() && !valid_sha1(rec.sha1))
            throw InputError("TSV line " + std::to_string(line_no) +
                             ": malformed sha1 '" + fields[2] + "'");
        rec.comment = fields[3];
        history.records.push_back(std::move(rec));
    }
    history.sort_records();
    return history;
}

PageHistory load_tsv(const std::string& path, const std::string& title) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open TSV file: " + path);
    return parse_tsv(in, title);
}

std::string history_to_tsv(const PageHistory& history) {
    std::ostringstream os;
    os << "timestamp\tuser\tsha1\tcomment\n";
    for (const auto& rec : history.records) {
        std::string comment = rec.comment;
        for (char& c : comment)
            if (c == '\t' || c == '\n' || c == '\r') c = ' ';
        os << rec.timestamp << '\t' << rec.user << '\t' << rec.sha1 << '\t'
           << comment << '\n';
    }
    return os.str();
}

void save_tsv(const PageHistory& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write TSV file: " + path);
    out << history_to_tsv(history);
}

}  // namespace colstate::ingest
