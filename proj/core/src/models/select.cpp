#include "colstate/models/select.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "colstate/errors.hpp"

namespace colstate::models {

using nlohmann::json;

SignificanceBand significance_band(double delta_evidence) {
    SignificanceBand band;
    band.magnitude =
        static_cast<int>(std::floor(std::abs(delta_evidence) / std::log(10.0)));
    band.direction = delta_evidence >= 0.0 ? 1 : -1;
    band.determined = band.magnitude >= 2;
    return band;
}

std::string SignificanceBand::str() const {
    if (!determined) return "no-det";
    std::ostringstream os;
    if (direction >= 0)
        os << "1e-" << magnitude;
    else
        os << ">1e" << magnitude;
    return os.str();
}

namespace {

json params_to_json(const FitResult& fit) {
    json p;
    switch (fit.family) {
        case Family::cs: {
            p["A"] = fit.params[0];
            p["p"] = fit.params[1];
            p["alpha"] = fit.params[2];
            break;
        }
        case Family::nexp: {
            const auto np = fit.nexp_params();
            p["A"] = np.amplitudes;
            p["b"] = np.decay_rates;
            break;
        }
        case Family::limit_cs: {
            p["A"] = fit.params[0];
            p["alpha"] = fit.params[1];
            break;
        }
    }
    return p;
}

json stderr_to_json(const FitResult& fit) {
    if (fit.std_errors.empty()) return nullptr;
    json s;
    switch (fit.family) {
        case Family::cs:
            s["A"] = fit.std_errors[0];
            s["p"] = fit.std_errors[1];
            s["alpha"] = fit.std_errors[2];
            break;
        case Family::nexp: {
            std::vector<double> a, b;
            for (std::size_t i = 0; i + 1 < fit.std_errors.size(); i += 2) {
                a.push_back(fit.std_errors[i]);
                b.push_back(fit.std_errors[i + 1]);
            }
            s["A"] = a;
            s["b"] = b;
            break;
        }
        case Family::limit_cs:
            s["A"] = fit.std_errors[0];
            s["alpha"] = fit.std_errors[1];
            break;
    }
    return s;
}

json entry_json(const ModelEntry& entry) {
    json f;
    f["model"] = family_name(entry.family);
    f["n"] = entry.family == Family::nexp ? json(entry.order) : json(nullptr);
    if (entry.fit) {
        f["params"] = params_to_json(*entry.fit);
        f["stderr"] = stderr_to_json(*entry.fit);
        f["logL"] = entry.fit->log_like;
        f["logE"] = entry.fit->log_evidence ? json(*entry.fit->log_evidence)
                                            : json(nullptr);
    }
    if (!entry.error.empty()) f["error"] = entry.error;
    return f;
}

}  // namespace

std::string model_entry_json(const ModelEntry& entry) {
    return entry_json(entry).dump(2);
}

std::string SelectReport::to_json() const {
    json j;
    j["page"] = page;
    j["N"] = total_symbols;
    j["fits"] = json::array();
    for (const auto& entry : entries) j["fits"].push_back(entry_json(entry));
    j["delta_E"] = delta_evidence ? json(*delta_evidence) : json(nullptr);
    j["band"] = delta_evidence ? band.str() : "fit-failed";
    if (best_nexp_order) j["best_nexp_n"] = *best_nexp_order;
    return j.dump(2);
}

std::string SelectReport::csv_header() {
    return "page,history_length,delta_E,alpha,alpha_err,band";
}

std::string SelectReport::csv_row() const {
    std::ostringstream os;
    os.precision(10);
    os << page << ',' << total_symbols << ',';
    if (delta_evidence) os << *delta_evidence;
    os << ',';
    // The index column is meaningful only when the evidence determines
    // the collective-state side.
    const FitResult* cs = nullptr;
    for (const auto& entry : entries)
        if (entry.family == Family::cs && entry.fit) cs = &*entry.fit;
    const bool show_alpha =
        cs && delta_evidence && band.determined && band.direction > 0;
    if (show_alpha) os << cs->params[2];
    os << ',';
    if (show_alpha && cs->std_errors.size() == 3) os << cs->std_errors[2];
    os << ',';
    os << (delta_evidence ? band.str() : "fit-failed");
    return os.str();
}

SelectReport select_model(const runstats::RunHistogram& hist,
                          const std::string& page, const SelectOptions& opts) {
    SelectReport report;
    report.page = page;
    report.total_symbols = hist.total_symbols;

    auto try_fit = [&](Family family, int order) {
        ModelEntry entry;
        entry.family = family;
        entry.order = order;
        try {
            FitResult fit = fit_mle(hist, family, order, opts.fit);
            fit.log_evidence = laplace_evidence(fit, opts.fit.box);
            if (!fit.log_evidence)
                entry.error = fit.boundary_optimum
                                  ? "optimum on the fit-box boundary; evidence omitted"
                                  : "Hessian not positive definite; evidence omitted";
            entry.fit = std::move(fit);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        report.entries.push_back(std::move(entry));
    };

    try_fit(Family::cs, 1);
    for (int n = 1; n <= opts.n_max; ++n) try_fit(Family::nexp, n);

    std::optional<double> cs_evidence;
    std::optional<double> best_nexp;
    for (const auto& entry : report.entries) {
        if (!entry.fit || !entry.fit->log_evidence) continue;
        const double e = *entry.fit->log_evidence;
        if (entry.family == Family::cs) {
            cs_evidence = e;
        } else if (!best_nexp || e > *best_nexp) {
            best_nexp = e;
            report.best_nexp_order = entry.order;
        }
    }
    if (cs_evidence && best_nexp) {
        report.delta_evidence = *cs_evidence - *best_nexp;
        report.band = significance_band(*report.delta_evidence);
    }
    return report;
}

}  // namespace colstate::models
