#include "colstate/ingest/revision.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "colstate/errors.hpp"

namespace colstate::ingest {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int digits(const std::string& s, std::size_t pos, int n) {
    int value = 0;
    for (int i = 0; i < n; ++i) {
        const char c = s[pos + static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') throw InputError("bad timestamp: " + s);
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

std::int64_t parse_iso8601(const std::string& ts) {
    // YYYY-MM-DDTHH:MM:SS followed by optional .fff and a Z.
    if (ts.size() < 20 || ts[4] != '-' || ts[7] != '-' || ts[10] != 'T' ||
        ts[13] != ':' || ts[16] != ':')
        throw InputError("bad timestamp: " + ts);
    const int year = digits(ts, 0, 4);
    const int month = digits(ts, 5, 2);
    const int day = digits(ts, 8, 2);
    const int hour = digits(ts, 11, 2);
    const int minute = digits(ts, 14, 2);
    const int second = digits(ts, 17, 2);
    std::size_t pos = 19;
    if (pos < ts.size() && ts[pos] == '.') {
        ++pos;
        while (pos < ts.size() && std::isdigit(static_cast<unsigned char>(ts[pos])))
            ++pos;
    }
    if (pos + 1 != ts.size() || ts[pos] != 'Z')
        throw InputError("bad timestamp (expected trailing Z): " + ts);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
        minute > 59 || second > 60)
        throw InputError("bad timestamp field: " + ts);
    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 +
           second;
}

bool valid_sha1(const std::string& sha1) {
    if (sha1.size() != 40) return false;
    return std::all_of(sha1.begin(), sha1.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

std::string normalize_sha1(std::string sha1) {
    for (char& c : sha1)
        if (c >= 'A' && c <= 'F') c = static_cast<char>(c - 'A' + 'a');
    return sha1;
}

void PageHistory::sort_records() {
    std::stable_sort(records.begin(), records.end(),
                     [](const RevisionRecord& a, const RevisionRecord& b) {
                         if (a.epoch_seconds != b.epoch_seconds)
                             return a.epoch_seconds < b.epoch_seconds;
                         if (a.revision_id && b.revision_id)
                             return *a.revision_id < *b.revision_id;
                         return false;
                     });
}

void PageHistory::validate() const {
    std::set<std::int64_t> ids;
    const RevisionRecord* prev = nullptr;
    for (const auto& r : records) {
        if (!r.sha1.empty() && !valid_sha1(r.sha1))
            throw InputError("malformed sha1: " + r.sha1);
        if (r.revision_id && !ids.insert(*r.revision_id).second)
            throw InputError("duplicate revision id " + std::to_string(*r.revision_id));
        if (prev) {
            if (prev->epoch_seconds > r.epoch_seconds)
                throw InputError("records not sorted by timestamp");
            if (prev->epoch_seconds == r.epoch_seconds && prev->revision_id &&
                r.revision_id && *prev->revision_id > *r.revision_id)
                throw InputError("records not sorted by revision id within ties");
        }
        prev = &r;
    }
}

}  // namespace colstate::ingest
