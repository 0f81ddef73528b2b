#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "colstate/ingest/revision.hpp"

namespace colstate::ingest {

struct DumpReport {
    std::size_t pages = 0;
    std::size_t revisions = 0;
    std::size_t rejected_missing_timestamp = 0;
    std::size_t hash_absent = 0;
};

using PageCallback = std::function<void(PageHistory&&)>;

// Streaming parse of a MediaWiki XML export. Revision text is never
// buffered, so memory stays bounded by one page's metadata. Anonymous
// contributors are keyed by their IP string; revisions without a
// timestamp are rejected and counted. Malformed XML raises InputError
// with the line and column.
DumpReport parse_dump_stream(std::istream& in, const PageCallback& on_page);

// Convenience wrapper collecting every page.
std::vector<PageHistory> parse_dump(std::istream& in, DumpReport* report = nullptr);
std::vector<PageHistory> load_dump(const std::string& path,
                                   DumpReport* report = nullptr);

// Dumps encode the content hash in base36; the API and this library use
// 40-digit lowercase hex. Accepts either form, returns hex, or an empty
// string when the input is neither.
std::string dump_sha1_to_hex(const std::string& raw);

}  // namespace colstate::ingest
