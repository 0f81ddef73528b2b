#pragma once

#include <cstdint>
#include <string>

#include "colstate/ingest/revision.hpp"

namespace colstate::ingest {

struct FetchOptions {
    double requests_per_second = 1.0;
    int max_retries = 3;           // attempts per request beyond the first
    double backoff_seconds = 0.5;  // doubled on every retry
    int page_size = 500;           // rvlimit
    long max_revisions = -1;       // -1: no cap
    // When set, the continuation token is persisted here after every
    // batch; an existing cursor resumes the walk instead of restarting.
    std::string cursor_path;
};

struct FetchResult {
    PageHistory history;  // only the revisions fetched by this call
    bool complete = false;
    std::string resume_token;  // empty when complete
    int requests_made = 0;
};

// Walks prop=revisions continuation pages for one title against a
// MediaWiki action API endpoint (e.g. https://host/w/api.php). On
// persistent transport failure the partial result is returned with
// complete=false and, when a cursor path is configured, a resumable
// cursor on disk. API-level errors surface verbatim as NetworkError.
FetchResult fetch_api(const std::string& title, const std::string& endpoint,
                      const FetchOptions& opts = {});

}  // namespace colstate::ingest
