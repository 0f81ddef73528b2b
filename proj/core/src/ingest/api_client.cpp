#include "colstate/ingest/api_client.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "colstate/errors.hpp"

namespace colstate::ingest {

namespace {

using nlohmann::json;

struct SplitUrl {
    std::string scheme_host;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos)
        throw InputError("endpoint must include a scheme: " + endpoint);
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

std::string url_encode(const std::string& value) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : value) {
        const bool safe = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                          (c >= '0' && c <= '9') || c == '-' || c == '_' ||
                          c == '.' || c == '~';
        if (safe) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

struct Cursor {
    std::string title;
    std::string endpoint;
    std::string token;
};

void write_cursor(const std::string& path, const Cursor& cursor) {
    json j{{"page", cursor.title},
           {"endpoint", cursor.endpoint},
           {"rvcontinue", cursor.token}};
    std::ofstream out(path);
    if (!out) throw InputError("cannot write cursor file: " + path);
    out << j.dump(2) << "\n";
}

bool read_cursor(const std::string& path, Cursor& cursor) {
    std::ifstream in(path);
    if (!in) return false;
    try {
        json j;
        in >> j;
        cursor.title = j.at("page").get<std::string>();
        cursor.endpoint = j.at("endpoint").get<std::string>();
        cursor.token = j.at("rvcontinue").get<std::string>();
        return true;
    } catch (const json::exception& e) {
        throw InputError(std::string("bad cursor file: ") + e.what());
    }
}

RevisionRecord record_from_json(const json& rev) {
    RevisionRecord rec;
    if (rev.contains("revid")) rec.revision_id = rev["revid"].get<std::int64_t>();
    if (rev.contains("timestamp")) {
        rec.timestamp = rev["timestamp"].get<std::string>();
        rec.epoch_seconds = parse_iso8601(rec.timestamp);
    }
    if (rev.contains("user")) rec.user = rev["user"].get<std::string>();
    if (rev.contains("sha1")) rec.sha1 = normalize_sha1(rev["sha1"].get<std::string>());
    if (rev.contains("comment")) rec.comment = rev["comment"].get<std::string>();
    return rec;
}

}  // namespace

FetchResult fetch_api(const std::string& title, const std::string& endpoint,
                      const FetchOptions& opts) {
    const SplitUrl url = split_url(endpoint);
    httplib::Client client(url.scheme_host);
    client.set_read_timeout(30, 0);
    client.set_follow_location(true);

    FetchResult result;
    result.history.title = title;

    Cursor cursor{title, endpoint, ""};
    if (!opts.cursor_path.empty()) {
        Cursor stored;
        if (read_cursor(opts.cursor_path, stored)) {
            if (stored.title != title || stored.endpoint != endpoint)
                throw InputError("cursor file belongs to a different fetch: " +
                                 opts.cursor_path);
            cursor.token = stored.token;
        }
    }

    const auto min_gap = std::chrono::duration<double>(
        opts.requests_per_second > 0.0 ? 1.0 / opts.requests_per_second : 0.0);
    auto last_request = std::chrono::steady_clock::now() - min_gap;

    while (true) {
        std::ostringstream query;
        query << url.path
              << "?action=query&format=json&prop=revisions&rvdir=newer"
              << "&rvprop=ids%7Ctimestamp%7Cuser%7Csha1%7Ccomment"
              << "&rvlimit=" << opts.page_size << "&titles=" << url_encode(title);
        if (!cursor.token.empty())
            query << "&rvcontinue=" << url_encode(cursor.token);

        httplib::Result response;
        double backoff = opts.backoff_seconds;
        for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
            const auto since = std::chrono::steady_clock::now() - last_request;
            if (since < min_gap)
                std::this_thread::sleep_for(min_gap - since);
            last_request = std::chrono::steady_clock::now();
            ++result.requests_made;
            response = client.Get(query.str());
            const bool retryable =
                !response || response->status == 429 || response->status >= 500;
            if (!retryable) break;
            if (attempt == opts.max_retries) {
                // Out of retries: persist the cursor and hand back what
                // we have.
                if (!opts.cursor_path.empty()) write_cursor(opts.cursor_path, cursor);
                result.complete = false;
                result.resume_token = cursor.token;
                return result;
            }
            std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
            backoff *= 2.0;
        }

        if (response->status != 200) {
            if (!opts.cursor_path.empty()) write_cursor(opts.cursor_path, cursor);
            throw NetworkError("API returned HTTP " + std::to_string(response->status));
        }

        json body;
        try {
            body = json::parse(response->body);
        } catch (const json::exception& e) {
            throw NetworkError(std::string("API returned invalid JSON: ") + e.what());
        }
        if (body.contains("error")) {
            // Surface the API's own error payload verbatim.
            throw NetworkError("API error: " + body["error"].dump());
        }

        if (body.contains("query") && body["query"].contains("pages")) {
            const auto& pages = body["query"]["pages"];
            auto consume_page = [&result](const json& page) {
                if (!page.contains("revisions")) return;
                for (const auto& rev : page["revisions"])
                    result.history.records.push_back(record_from_json(rev));
            };
            if (pages.is_array())
                for (const auto& page : pages) consume_page(page);
            else
                for (const auto& [_, page] : pages.items()) consume_page(page);
        }

        if (opts.max_revisions >= 0 &&
            static_cast<long>(result.history.records.size()) >= opts.max_revisions) {
            result.complete = true;
            break;
        }

        if (body.contains("continue") && body["continue"].contains("rvcontinue")) {
            cursor.token = body["continue"]["rvcontinue"].get<std::string>();
            if (!opts.cursor_path.empty()) write_cursor(opts.cursor_path, cursor);
            continue;
        }
        result.complete = true;
        break;
    }

    result.history.sort_records();
    if (result.complete && !opts.cursor_path.empty())
        std::remove(opts.cursor_path.c_str());
    return result;
}

}  // namespace colstate::ingest
