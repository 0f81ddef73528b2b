#include <doctest.h>

#include <httplib.h>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json fetch_batch(const std::vector<int>& ids, const std::string& next_token) {
    json revisions = json::array();
    for (int id : ids) {
        revisions.push_back(
            {{"revid", id},
             {"user", "U"},
             {"timestamp", "2006-01-01T00:00:0" + std::to_string(id) + "Z"},
             {"sha1", std::string(39, 'b') + std::to_string(id)},
             {"comment", ""}});
    }
    json body{{"query", {{"pages", {{"7", {{"title", "T"}, {"revisions", revisions}}}}}}}};
    if (!next_token.empty())
        body["continue"] = {{"rvcontinue", next_token}, {"continue", "||"}};
    return body;
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(COLSTATE_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("fetch subcommand: full walk, outage, resume") {
    std::atomic<bool> outage{false};
    httplib::Server server;
    server.Get("/w/api.php",
               [&](const httplib::Request& req, httplib::Response& res) {
                   if (!req.has_param("rvcontinue")) {
                       res.set_content(fetch_batch({1, 2}, "tok").dump(),
                                       "application/json");
                   } else if (outage.load()) {
                       res.status = 503;
                   } else {
                       res.set_content(fetch_batch({3, 4}, "").dump(),
                                       "application/json");
                   }
               });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread listener([&server] { server.listen_after_bind(); });
    server.wait_until_ready();
    const std::string url =
        "http://127.0.0.1:" + std::to_string(port) + "/w/api.php";

    const fs::path dir =
        fs::temp_directory_path() / ("colstate_fetch_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto at = [&dir](const char* name) { return (dir / name).string(); };
    const std::string common = " --page T --api-url " + url +
                               " --rate-limit 10000 --retries 1 ";

    // One-shot reference.
    REQUIRE(run_cli("fetch" + common + "--out " + at("oneshot.tsv")) == 0);
    const std::string reference = slurp(at("oneshot.tsv"));
    CHECK(reference.find("bbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbbb4") !=
          std::string::npos);

    // Interrupted walk exits 4 and leaves a cursor plus partial output.
    outage = true;
    CHECK(run_cli("fetch" + common + "--cursor " + at("cursor.json") + " --out " +
                  at("walk.tsv")) == 4);
    CHECK(fs::exists(at("cursor.json")));
    CHECK(slurp(at("walk.tsv")).find("b2") != std::string::npos);

    // Service restored: the same invocation appends the remainder.
    outage = false;
    CHECK(run_cli("fetch" + common + "--cursor " + at("cursor.json") + " --out " +
                  at("walk.tsv")) == 0);
    CHECK(slurp(at("walk.tsv")) == reference);
    CHECK_FALSE(fs::exists(at("cursor.json")));

    server.stop();
    listener.join();
    fs::remove_all(dir);
}
