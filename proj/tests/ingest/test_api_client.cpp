#include <doctest.h>

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include "colstate/errors.hpp"
#include "colstate/ingest/api_client.hpp"
#include "colstate/ingest/dump_xml.hpp"

using namespace colstate;
using namespace colstate::ingest;
using nlohmann::json;

namespace {

json revision_json(int id, const std::string& user) {
    return json{{"revid", id},
                {"parentid", id - 1},
                {"user", user},
                {"timestamp", "2006-01-01T00:00:0" + std::to_string(id % 10) + "Z"},
                {"sha1", std::string(38, 'a') + (id < 10 ? "0" : "") +
                             std::to_string(id)},
                {"comment", "edit " + std::to_string(id)}};
}

json batch_json(const std::vector<int>& ids, const std::string& next_token) {
    json revisions = json::array();
    for (int id : ids) revisions.push_back(revision_json(id, "User" + std::to_string(id % 3)));
    json body{{"query",
               {{"pages",
                 {{"42",
                   {{"pageid", 42}, {"title", "T"}, {"revisions", revisions}}}}}}}};
    if (!next_token.empty())
        body["continue"] = {{"rvcontinue", next_token}, {"continue", "||"}};
    return body;
}

struct MockServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    explicit MockServer(httplib::Server::Handler handler) {
        server.Get("/w/api.php", std::move(handler));
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~MockServer() {
        server.stop();
        thread.join();
    }
    std::string endpoint() const {
        return "http://127.0.0.1:" + std::to_string(port) + "/w/api.php";
    }
};

FetchOptions fast_options() {
    FetchOptions opts;
    opts.requests_per_second = 10000.0;
    opts.backoff_seconds = 0.005;
    return opts;
}

bool has_param(const httplib::Request& req, const std::string& key,
               const std::string& value) {
    return req.has_param(key) && req.get_param_value(key) == value;
}

}  // namespace

TEST_CASE("fetch walks continuation pages and concatenates records") {
    MockServer mock([](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("rvcontinue"))
            res.set_content(batch_json({1, 2}, "tok1").dump(), "application/json");
        else if (has_param(req, "rvcontinue", "tok1"))
            res.set_content(batch_json({3, 4}, "").dump(), "application/json");
        else
            res.status = 400;
    });

    const auto result = fetch_api("T", mock.endpoint(), fast_options());
    CHECK(result.complete);
    REQUIRE(result.history.records.size() == 4);
    CHECK(result.history.records[0].revision_id == 1);
    CHECK(result.history.records[3].revision_id == 4);
    CHECK(result.history.records[0].user == "User1");
}

TEST_CASE("fetch honors 429 with backoff then succeeds") {
    std::atomic<int> hits{0};
    MockServer mock([&hits](const httplib::Request&, httplib::Response& res) {
        if (hits.fetch_add(1) == 0) {
            res.status = 429;
            return;
        }
        res.set_content(batch_json({1}, "").dump(), "application/json");
    });

    const auto result = fetch_api("T", mock.endpoint(), fast_options());
    CHECK(result.complete);
    CHECK(result.history.records.size() == 1);
    CHECK(result.requests_made == 2);
}

TEST_CASE("API error payloads surface verbatim") {
    MockServer mock([](const httplib::Request&, httplib::Response& res) {
        res.set_content(
            json{{"error", {{"code", "maxlag"}, {"info", "lagged"}}}}.dump(),
            "application/json");
    });
    CHECK_THROWS_WITH_AS(fetch_api("T", mock.endpoint(), fast_options()),
                         doctest::Contains("maxlag"), NetworkError);
}

TEST_CASE("cursor resume yields the same records as a single-shot fetch") {
    std::atomic<bool> second_batch_up{false};
    MockServer mock([&](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("rvcontinue")) {
            res.set_content(batch_json({1, 2}, "tok1").dump(), "application/json");
        } else if (has_param(req, "rvcontinue", "tok1")) {
            if (!second_batch_up.load()) {
                res.status = 500;
                return;
            }
            res.set_content(batch_json({3, 4}, "").dump(), "application/json");
        } else {
            res.status = 400;
        }
    });

    // One-shot reference with the outage repaired.
    second_batch_up = true;
    const auto reference = fetch_api("T", mock.endpoint(), fast_options());
    REQUIRE(reference.complete);
    REQUIRE(reference.history.records.size() == 4);

    // Interrupted walk: batch two is down, the cursor must persist.
    second_batch_up = false;
    const std::string cursor_path = "fetch_cursor_test.json";
    std::remove(cursor_path.c_str());
    auto opts = fast_options();
    opts.cursor_path = cursor_path;
    const auto partial = fetch_api("T", mock.endpoint(), opts);
    CHECK_FALSE(partial.complete);
    CHECK(partial.history.records.size() == 2);
    CHECK(partial.resume_token == "tok1");
    CHECK(std::ifstream(cursor_path).good());

    // Service restored: resuming fetches only the remainder.
    second_batch_up = true;
    const auto resumed = fetch_api("T", mock.endpoint(), opts);
    CHECK(resumed.complete);
    REQUIRE(resumed.history.records.size() == 2);

    std::vector<std::int64_t> stitched, oneshot;
    for (const auto& r : partial.history.records) stitched.push_back(*r.revision_id);
    for (const auto& r : resumed.history.records) stitched.push_back(*r.revision_id);
    for (const auto& r : reference.history.records) oneshot.push_back(*r.revision_id);
    CHECK(stitched == oneshot);
    CHECK_FALSE(std::ifstream(cursor_path).good());  // cursor cleaned up
}

TEST_CASE("endpoint URLs must carry a scheme") {
    CHECK_THROWS_AS(fetch_api("T", "not-a-url", fast_options()), InputError);
}

TEST_CASE("API and dump parses of the same revisions agree") {
    MockServer mock([](const httplib::Request&, httplib::Response& res) {
        res.set_content(batch_json({1, 2, 3}, "").dump(), "application/json");
    });
    const auto fetched = fetch_api("T", mock.endpoint(), fast_options());
    REQUIRE(fetched.complete);

    // The same three revisions rendered as an XML export.
    std::ostringstream xml;
    xml << "<mediawiki><page><title>T</title>";
    for (const auto& rec : fetched.history.records) {
        xml << "<revision><id>" << *rec.revision_id << "</id><timestamp>"
            << rec.timestamp << "</timestamp><contributor><username>" << rec.user
            << "</username></contributor><comment>" << rec.comment
            << "</comment><sha1>" << rec.sha1 << "</sha1></revision>";
    }
    xml << "</page></mediawiki>";
    std::istringstream in(xml.str());
    const auto pages = parse_dump(in);
    REQUIRE(pages.size() == 1);
    REQUIRE(pages[0].records.size() == fetched.history.records.size());
    for (std::size_t i = 0; i < pages[0].records.size(); ++i) {
        const auto& a = pages[0].records[i];
        const auto& b = fetched.history.records[i];
        CHECK(a.revision_id == b.revision_id);
        CHECK(a.timestamp == b.timestamp);
        CHECK(a.user == b.user);
        CHECK(a.sha1 == b.sha1);
        CHECK(a.comment == b.comment);
    }
}
