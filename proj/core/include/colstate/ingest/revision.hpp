#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace colstate::ingest {

// One revision's metadata. `user` holds the username, or the IP string
// for anonymous contributors. `sha1` is the lowercase 40-hex content
// hash; empty when the revision's hash is deleted or suppressed.
struct RevisionRecord {
    std::string timestamp;  // ISO 8601, e.g. 2006-03-21T02:08:00Z
    std::int64_t epoch_seconds = 0;
    std::optional<std::int64_t> revision_id;
    std::string user;
    std::string sha1;
    std::string comment;

    bool hash_absent() const { return sha1.empty(); }
};

struct PageHistory {
    std::string title;
    std::vector<RevisionRecord> records;

    // Stable sort by (timestamp, revision_id); records without ids keep
    // input order among timestamp ties.
    void sort_records();
    // Ordering and duplicate-revision-id checks.
    void validate() const;
};

// Parses YYYY-MM-DDTHH:MM:SS(.fff)?Z to epoch seconds (UTC). Throws
// InputError on malformed input.
std::int64_t parse_iso8601(const std::string& timestamp);

// True iff `sha1` is exactly 40 lowercase hex digits.
bool valid_sha1(const std::string& sha1);

// Lowercases A-F; anything else is returned unchanged for the validity
// check to reject.
std::string normalize_sha1(std::string sha1);

}  // namespace colstate::ingest
