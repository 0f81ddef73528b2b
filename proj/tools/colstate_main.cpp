// Command-line front end: fetch / ingest / coarsegrain / runs / fit /
// select / pumpstudy, wired 1:1 onto the library operations. Results go
// to --out (or stdout); structured JSON-line logs go to stderr; exit
// codes are 0 success, 2 input error, 3 fit failure, 4 network failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "colstate/errors.hpp"
#include "colstate/fsm/study.hpp"
#include "colstate/ingest/api_client.hpp"
#include "colstate/ingest/coarse_grain.hpp"
#include "colstate/ingest/dump_xml.hpp"
#include "colstate/ingest/tsv.hpp"
#include "colstate/models/select.hpp"
#include "colstate/runstats/augment.hpp"
#include "colstate/runstats/run_histogram.hpp"
#include "colstate/runstats/sequence.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void log_line(const std::string& level, json fields) {
    fields["level"] = level;
    std::cerr << fields.dump() << "\n";
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw colstate::InputError("cannot write output file: " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

colstate::ingest::PageHistory load_records(const std::string& path,
                                           const std::string& format,
                                           const std::string& page,
                                           colstate::ingest::DumpReport* report) {
    using namespace colstate::ingest;
    std::string kind = format;
    if (kind == "auto") {
        const auto ext = fs::path(path).extension().string();
        kind = ext == ".xml" ? "xml" : "tsv";
    }
    if (kind == "tsv") {
        return load_tsv(path, page.empty() ? fs::path(path).stem().string() : page);
    }
    auto pages = load_dump(path, report);
    if (pages.empty()) throw colstate::InputError("dump contains no pages");
    if (page.empty()) {
        if (pages.size() > 1)
            log_line("warn", {{"msg", "dump has multiple pages; taking the first"},
                              {"pages", pages.size()}});
        return std::move(pages.front());
    }
    for (auto& h : pages)
        if (h.title == page) return std::move(h);
    throw colstate::InputError("page not found in dump: " + page);
}

std::string default_page_name(const std::string& in_path) {
    return fs::path(in_path).stem().string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-state vs collective-state analysis of edit histories"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Master seed for all randomized steps")
        ->capture_default_str();

    // fetch
    auto* fetch = app.add_subcommand("fetch", "Fetch revision metadata from a MediaWiki API");
    std::string fetch_page, fetch_url, fetch_out, fetch_cursor;
    double rate_limit = 1.0;
    int retries = 3, page_size = 500;
    long max_revisions = -1;
    fetch->add_option("--page", fetch_page, "Page title")->required();
    fetch->add_option("--api-url", fetch_url, "API endpoint, e.g. https://en.wikipedia.org/w/api.php")->required();
    fetch->add_option("--rate-limit", rate_limit, "Requests per second")->capture_default_str();
    fetch->add_option("--retries", retries, "Retries per request")->capture_default_str();
    fetch->add_option("--page-size", page_size, "Revisions per request")->capture_default_str();
    fetch->add_option("--max-revisions", max_revisions, "Stop after this many revisions (-1: all)");
    fetch->add_option("--cursor", fetch_cursor, "Resumable cursor file");
    fetch->add_option("--out", fetch_out, "Output records TSV (append on resume)");

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Normalize an XML dump or TSV into sorted records");
    std::string ingest_in, ingest_format = "auto", ingest_page, ingest_out, ingest_report;
    ingest_cmd->add_option("--in", ingest_in, "Input file")->required();
    ingest_cmd->add_option("--format", ingest_format, "xml | tsv | auto")
        ->check(CLI::IsMember({"xml", "tsv", "auto"}))
        ->capture_default_str();
    ingest_cmd->add_option("--page", ingest_page, "Page title to extract");
    ingest_cmd->add_option("--out", ingest_out, "Output records TSV");
    ingest_cmd->add_option("--report", ingest_report, "Run report JSON path");

    // coarsegrain
    auto* coarse = app.add_subcommand("coarsegrain", "Records to a C/R (or C/R/N) symbol sequence");
    std::string cg_in, cg_mode = "R", cg_out, cg_hash = "skip", cg_page;
    coarse->add_option("--in", cg_in, "Records TSV")->required();
    coarse->add_option("--mode", cg_mode, "R: two-symbol; RN: insert user-change N symbols")
        ->check(CLI::IsMember({"R", "RN"}))
        ->capture_default_str();
    coarse->add_option("--hash-absent", cg_hash, "skip | fail")
        ->check(CLI::IsMember({"skip", "fail"}))
        ->capture_default_str();
    coarse->add_option("--page", cg_page, "Page title for provenance");
    coarse->add_option("--out", cg_out, "Output sequence file");

    // runs
    auto* runs = app.add_subcommand("runs", "Count bracketed cooperative runs");
    std::string runs_in, runs_mode = "auto", runs_out;
    runs->add_option("--in", runs_in, "Sequence file")->required();
    runs->add_option("--mode", runs_mode, "R | RN delimiters (auto: RN iff the sequence has N)")
        ->check(CLI::IsMember({"R", "RN", "auto"}))
        ->capture_default_str();
    runs->add_option("--out", runs_out, "Histogram CSV");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit one model family to a run histogram");
    std::string fit_in, fit_model = "CS", fit_out, fit_page;
    int fit_starts = 32, fit_kmax = 0, fit_threads = 1;
    fit_cmd->add_option("--in", fit_in, "Histogram CSV")->required();
    fit_cmd->add_option("--model", fit_model, "CS | 1EXP..6EXP | LIMITCS")->capture_default_str();
    fit_cmd->add_option("--starts", fit_starts, "Optimizer starts")->capture_default_str();
    fit_cmd->add_option("--kmax", fit_kmax, "Fit cutoff (0: largest observed k)");
    fit_cmd->add_option("--threads", fit_threads, "Worker threads over optimizer starts")->capture_default_str();
    fit_cmd->add_option("--page", fit_page, "Page label for the report");
    fit_cmd->add_option("--out", fit_out, "Fit report JSON");

    // select
    auto* select_cmd = app.add_subcommand("select", "Bayesian model selection: CS vs nEXP");
    std::string sel_in, sel_out, sel_csv, sel_page;
    int sel_nmax = 5, sel_starts = 32, sel_kmax = 0, sel_threads = 1;
    select_cmd->add_option("--in", sel_in, "Histogram CSV")->required();
    select_cmd->add_option("--nmax", sel_nmax, "Largest nEXP component count")->capture_default_str();
    select_cmd->add_option("--starts", sel_starts, "Optimizer starts")->capture_default_str();
    select_cmd->add_option("--kmax", sel_kmax, "Fit cutoff (0: largest observed k)");
    select_cmd->add_option("--threads", sel_threads, "Worker threads over optimizer starts")->capture_default_str();
    select_cmd->add_option("--page", sel_page, "Page label for the report");
    select_cmd->add_option("--out", sel_out, "Full report JSON");
    select_cmd->add_option("--csv", sel_csv, "Evidence-table CSV (header plus one row)");

    // pumpstudy
    auto* pump = app.add_subcommand("pumpstudy", "Convergence study of repeated-word decay on random machines");
    int pump_p = 10, pump_bins = 20, pump_per_bin = 50, pump_q = 0, pump_horizon = 40;
    std::string pump_out;
    pump->add_option("--p", pump_p, "Machine state count")->capture_default_str();
    pump->add_option("--bins", pump_bins, "Spectral-radius bins")->capture_default_str();
    pump->add_option("--per-bin", pump_per_bin, "Machines per bin")->capture_default_str();
    pump->add_option("--q", pump_q, "Transient offset (0: use p)");
    pump->add_option("--k-horizon", pump_horizon, "Ratio horizon")->capture_default_str();
    pump->add_option("--out", pump_out, "Convergence CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fetch) {
            colstate::ingest::FetchOptions opts;
            opts.requests_per_second = rate_limit;
            opts.max_retries = retries;
            opts.page_size = page_size;
            opts.max_revisions = max_revisions;
            opts.cursor_path = fetch_cursor;
            const bool resuming =
                !fetch_cursor.empty() && std::ifstream(fetch_cursor).good();
            const auto result = colstate::ingest::fetch_api(fetch_page, fetch_url, opts);
            const std::string tsv = colstate::ingest::history_to_tsv(result.history);
            if (resuming && !fetch_out.empty() && fetch_out != "-") {
                // Drop the header and append the new records.
                std::ofstream out(fetch_out, std::ios::app);
                if (!out) throw colstate::InputError("cannot append to " + fetch_out);
                out << tsv.substr(tsv.find('\n') + 1);
            } else {
                write_text(fetch_out, tsv);
            }
            log_line("info", {{"msg", "fetch finished"},
                              {"records", result.history.records.size()},
                              {"requests", result.requests_made},
                              {"complete", result.complete}});
            if (!result.complete) {
                log_line("error", {{"msg", "fetch incomplete; cursor saved"},
                                   {"cursor", fetch_cursor},
                                   {"exit", 4}});
                return 4;
            }
        } else if (*ingest_cmd) {
            colstate::ingest::DumpReport dump_report;
            const auto history =
                load_records(ingest_in, ingest_format, ingest_page, &dump_report);
            history.validate();
            write_text(ingest_out, colstate::ingest::history_to_tsv(history));
            const auto agreement = colstate::ingest::agreement_report(history);
            json report{{"page", history.title},
                        {"records", history.records.size()},
                        {"skipped",
                         {{"missing_timestamp", dump_report.rejected_missing_timestamp},
                          {"hash_absent", dump_report.hash_absent}}},
                        {"detector_agreement",
                         {{"both", agreement.both},
                          {"sha1_only", agreement.sha1_only},
                          {"comment_only", agreement.comment_only},
                          {"neither", agreement.neither}}}};
            if (!ingest_report.empty()) write_text(ingest_report, report.dump(2));
            log_line("info", {{"msg", "ingest finished"},
                              {"records", history.records.size()}});
        } else if (*coarse) {
            const auto history = colstate::ingest::load_tsv(
                cg_in, cg_page.empty() ? default_page_name(cg_in) : cg_page);
            colstate::ingest::CoarseGrainPolicy policy;
            policy.hash_absent = cg_hash == "fail"
                                     ? colstate::ingest::HashAbsentPolicy::fail
                                     : colstate::ingest::HashAbsentPolicy::skip_record;
            const auto seq =
                cg_mode == "RN"
                    ? colstate::runstats::augment_user_changes(history, policy)
                    : colstate::ingest::coarse_grain(history, policy);
            write_text(cg_out, seq.symbols);
            log_line("info", {{"msg", "coarse-grain finished"},
                              {"symbols", seq.symbols.size()},
                              {"mode", cg_mode}});
        } else if (*runs) {
            const auto seq = colstate::runstats::load_sequence(runs_in);
            colstate::runstats::DelimiterMode mode;
            if (runs_mode == "auto")
                mode = seq.mode == colstate::runstats::AlphabetMode::three_symbol
                           ? colstate::runstats::DelimiterMode::r_or_n
                           : colstate::runstats::DelimiterMode::r_only;
            else
                mode = runs_mode == "RN" ? colstate::runstats::DelimiterMode::r_or_n
                                         : colstate::runstats::DelimiterMode::r_only;
            const auto hist = colstate::runstats::count_runs(seq, mode);
            write_text(runs_out, colstate::runstats::histogram_csv(hist));
            log_line("info", {{"msg", "run counting finished"},
                              {"runs", hist.total_runs},
                              {"max_k", hist.max_k()}});
        } else if (*fit_cmd) {
            const auto hist = colstate::runstats::load_histogram(fit_in);
            colstate::models::Family family = colstate::models::Family::cs;
            int order = 1;
            if (fit_model == "CS") {
                family = colstate::models::Family::cs;
            } else if (fit_model == "LIMITCS") {
                family = colstate::models::Family::limit_cs;
            } else if (fit_model.size() == 4 && fit_model.substr(1) == "EXP" &&
                       fit_model[0] >= '1' && fit_model[0] <= '6') {
                family = colstate::models::Family::nexp;
                order = fit_model[0] - '0';
            } else {
                throw colstate::InputError("unknown model: " + fit_model);
            }
            colstate::models::FitOptions opts;
            opts.seed = seed;
            opts.starts = fit_starts;
            opts.k_max = fit_kmax;
            opts.threads = fit_threads;
            colstate::models::ModelEntry entry;
            entry.family = family;
            entry.order = order;
            auto fit = colstate::models::fit_mle(hist, family, order, opts);
            fit.log_evidence = colstate::models::laplace_evidence(fit, opts.box);
            entry.fit = std::move(fit);
            json out{{"page", fit_page.empty() ? default_page_name(fit_in) : fit_page},
                     {"N", hist.total_symbols},
                     {"fits", json::array({json::parse(
                                  colstate::models::model_entry_json(entry))})}};
            write_text(fit_out, out.dump(2));
            log_line("info", {{"msg", "fit finished"},
                              {"model", fit_model},
                              {"logL", entry.fit->log_like}});
        } else if (*select_cmd) {
            const auto hist = colstate::runstats::load_histogram(sel_in);
            colstate::models::SelectOptions opts;
            opts.n_max = sel_nmax;
            opts.fit.seed = seed;
            opts.fit.starts = sel_starts;
            opts.fit.k_max = sel_kmax;
            opts.fit.threads = sel_threads;
            const auto report = colstate::models::select_model(
                hist, sel_page.empty() ? default_page_name(sel_in) : sel_page, opts);
            const std::string table = colstate::models::SelectReport::csv_header() +
                                      "\n" + report.csv_row() + "\n";
            if (!sel_csv.empty()) write_text(sel_csv, table);
            write_text(sel_out, report.to_json());
            log_line("info",
                     {{"msg", "selection finished"},
                      {"delta_E", report.delta_evidence ? json(*report.delta_evidence)
                                                        : json(nullptr)},
                      {"band", report.delta_evidence ? report.band.str() : "fit-failed"}});
        } else if (*pump) {
            colstate::fsm::StratifyOptions opts;
            opts.bins = pump_bins;
            opts.per_bin = pump_per_bin;
            opts.seed = seed;
            auto sample = colstate::fsm::stratified_sample_by_radius(pump_p, opts);
            for (int b : sample.unfilled_bins)
                log_line("warn", {{"msg", "bin not filled within attempt budget"},
                                  {"bin", b}});
            const int q = pump_q > 0 ? pump_q : pump_p;
            colstate::fsm::compute_convergence_ratios(sample, q, pump_horizon);
            write_text(pump_out, colstate::fsm::study_csv(sample));
            const auto quant =
                colstate::fsm::offset_ratio_quantiles(sample, pump_horizon);
            log_line("info", {{"msg", "pump study finished"},
                              {"machines", sample.samples.size()},
                              {"attempts", sample.attempts},
                              {"median_Chat", quant.median},
                              {"lo1sigma", quant.lo1sigma},
                              {"hi1sigma", quant.hi1sigma}});
        }
    } catch (const colstate::Error& e) {
        const int code = static_cast<int>(e.exit_code());
        log_line("error", {{"msg", e.what()}, {"exit", code}});
        return code;
    } catch (const std::exception& e) {
        log_line("error", {{"msg", e.what()}, {"exit", 1}});
        return 1;
    }
    return 0;
}
