#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "colstate/models/synth.hpp"
#include "colstate/runstats/run_histogram.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("colstate_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

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

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("pipeline on the worked day: ingest, coarsegrain, runs, select") {
    TempDir dir;
    write_file(dir.file("day.tsv"), fixtures::kDayTsv);

    REQUIRE(run_cli("ingest --in " + dir.file("day.tsv") + " --out " +
                    dir.file("records.tsv") + " --report " +
                    dir.file("report.json")) == 0);
    const std::string report = slurp(dir.file("report.json"));
    CHECK(report.find("\"detector_agreement\"") != std::string::npos);
    CHECK(report.find("\"skipped\"") != std::string::npos);

    REQUIRE(run_cli("coarsegrain --in " + dir.file("records.tsv") + " --out " +
                    dir.file("seq.txt")) == 0);
    CHECK(slurp(dir.file("seq.txt")) == std::string(fixtures::kDayTwoSymbol) + "\n");

    REQUIRE(run_cli("coarsegrain --mode RN --in " + dir.file("records.tsv") +
                    " --out " + dir.file("seq3.txt")) == 0);
    CHECK(slurp(dir.file("seq3.txt")) ==
          std::string(fixtures::kDayThreeSymbol) + "\n");

    REQUIRE(run_cli("runs --mode RN --in " + dir.file("seq3.txt") + " --out " +
                    dir.file("hist3.csv")) == 0);
    const std::string hist = slurp(dir.file("hist3.csv"));
    CHECK(hist.find("mode=RN") != std::string::npos);
    CHECK(hist.find("1,3") != std::string::npos);

    // Eleven edits cannot constrain any family; the table row must still
    // carry every column.
    REQUIRE(run_cli("runs --in " + dir.file("seq.txt") + " --out " +
                    dir.file("hist.csv")) == 0);
    REQUIRE(run_cli("select --in " + dir.file("hist.csv") + " --page day --csv " +
                    dir.file("table.csv") + " --out " + dir.file("sel.json")) == 0);
    const std::string table = slurp(dir.file("table.csv"));
    CHECK(table.find("page,history_length,delta_E,alpha,alpha_err,band") == 0);
    CHECK(table.find("day,11,") != std::string::npos);
    const std::string sel = slurp(dir.file("sel.json"));
    CHECK(sel.find("\"delta_E\"") != std::string::npos);
    CHECK(sel.find("\"band\"") != std::string::npos);
}

TEST_CASE("select on synthetic collective-state data produces a determined row") {
    TempDir dir;
    const auto hist = colstate::models::synth_cs(0.4, 0.55, 8000, 77);
    colstate::runstats::save_histogram(hist, dir.file("hist.csv"));

    REQUIRE(run_cli("select --in " + dir.file("hist.csv") +
                    " --nmax 2 --page synth --csv " + dir.file("table.csv") +
                    " --out " + dir.file("sel.json")) == 0);
    const std::string table = slurp(dir.file("table.csv"));
    CHECK(table.find("synth,") != std::string::npos);
    CHECK(table.find("1e-") != std::string::npos);  // determined, CS side

    SUBCASE("same inputs and seed give byte-identical reports") {
        REQUIRE(run_cli("select --in " + dir.file("hist.csv") +
                        " --nmax 2 --page synth --csv " + dir.file("table2.csv") +
                        " --out " + dir.file("sel2.json")) == 0);
        CHECK(slurp(dir.file("sel2.json")) == slurp(dir.file("sel.json")));
        CHECK(slurp(dir.file("table2.csv")) == slurp(dir.file("table.csv")));
    }

    SUBCASE("fit subcommand reports a single model") {
        REQUIRE(run_cli("fit --in " + dir.file("hist.csv") +
                        " --model CS --out " + dir.file("fit.json")) == 0);
        const std::string fit = slurp(dir.file("fit.json"));
        CHECK(fit.find("\"model\": \"CS\"") != std::string::npos);
        CHECK(fit.find("\"logL\"") != std::string::npos);
        CHECK(fit.find("\"logE\"") != std::string::npos);

        REQUIRE(run_cli("fit --in " + dir.file("hist.csv") +
                        " --model 2EXP --out " + dir.file("fit2.json")) == 0);
        CHECK(slurp(dir.file("fit2.json")).find("\"n\": 2") != std::string::npos);

        REQUIRE(run_cli("fit --in " + dir.file("hist.csv") +
                        " --model LIMITCS --out " + dir.file("fitl.json")) == 0);
        CHECK(slurp(dir.file("fitl.json")).find("\"model\": \"limitCS\"") !=
              std::string::npos);
    }

    SUBCASE("inputs are never mutated") {
        const std::string before = slurp(dir.file("hist.csv"));
        REQUIRE(run_cli("select --in " + dir.file("hist.csv") + " --out " +
                        dir.file("sel3.json")) == 0);
        CHECK(slurp(dir.file("hist.csv")) == before);
    }
}

TEST_CASE("exit codes: input and fit failures") {
    TempDir dir;
    CHECK(run_cli("runs --in " + dir.file("missing.txt")) == 2);
    CHECK(run_cli("coarsegrain --in " + dir.file("missing.tsv")) == 2);

    // One distinct run length: every family refuses, exit code 3.
    colstate::runstats::RunHistogram tiny;
    tiny.counts[{2}] = 5;
    tiny.total_runs = 5;
    tiny.total_symbols = 40;
    colstate::runstats::save_histogram(tiny, dir.file("tiny.csv"));
    CHECK(run_cli("fit --in " + dir.file("tiny.csv") + " --model 1EXP") == 3);
    CHECK(run_cli("fit --in " + dir.file("tiny.csv") + " --model NOPE") == 2);
}

TEST_CASE("pumpstudy emits the convergence CSV") {
    TempDir dir;
    REQUIRE(run_cli("pumpstudy --p 4 --bins 4 --per-bin 3 --k-horizon 8 --out " +
                    dir.file("conv.csv")) == 0);
    const std::string csv = slurp(dir.file("conv.csv"));
    CHECK(csv.find("rho_bin,k,median_C,median_Chat,lo1sigma,hi1sigma") == 0);

    // One-state machines have exactly geometric words: every offset
    // ratio is one.
    REQUIRE(run_cli("pumpstudy --p 1 --bins 3 --per-bin 2 --k-horizon 5 --out " +
                    dir.file("conv1.csv")) == 0);
    std::istringstream in(slurp(dir.file("conv1.csv")));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string field;
        for (int i = 0; i < 4 && std::getline(row, field, ','); ++i) {
            if (i == 3) CHECK(std::stod(field) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}
