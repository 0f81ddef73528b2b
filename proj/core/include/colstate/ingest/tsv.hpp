#pragma once

#include <iosfwd>
#include <string>

#include "colstate/ingest/revision.hpp"

namespace colstate::ingest {

// Tab-separated revision records: header row then
// timestamp<TAB>user<TAB>sha1<TAB>comment per line. An empty sha1 field
// marks a hash-absent revision. Output is sorted, ties stable.
PageHistory parse_tsv(std::istream& in, const std::string& title);
PageHistory load_tsv(const std::string& path, const std::string& title);

std::string history_to_tsv(const PageHistory& history);
void save_tsv(const PageHistory& history, const std::string& path);

}  // namespace colstate::ingest
