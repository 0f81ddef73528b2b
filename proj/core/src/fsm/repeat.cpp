#include "colstate/fsm/repeat.hpp"

#include <cmath>
#include <limits>

#include "colstate/errors.hpp"
#include "colstate/fsm/word_matrix.hpp"

namespace colstate::fsm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Matrix with entries scaled into O(1) range and the log of the factor
// taken out, so powers never underflow.
struct ScaledMatrix {
    Eigen::MatrixXd m;
    double log_scale = 0.0;

    void rescale() {
        const double top = m.maxCoeff();
        if (top > 0.0 && (top < 1e-128 || top > 1e128)) {
            m /= top;
            log_scale += std::log(top);
        }
    }
};

ScaledMatrix scaled_power(const Eigen::MatrixXd& base, long k) {
    ScaledMatrix result{Eigen::MatrixXd::Identity(base.rows(), base.cols()), 0.0};
    ScaledMatrix sq{base, 0.0};
    while (k > 0) {
        if (k & 1) {
            result.m = result.m * sq.m;
            result.log_scale += sq.log_scale;
            result.rescale();
        }
        k >>= 1;
        if (k > 0) {
            sq.m = sq.m * sq.m;
            sq.log_scale *= 2.0;
            sq.rescale();
        }
    }
    return result;
}

}  // namespace

double log_repeat_probability(const Machine& m, const std::string& word, long k) {
    if (k < 1) throw InputError("repeat count k must be >= 1");
    const WordMatrix wm = word_matrix(m, word);
    const ScaledMatrix powered = scaled_power(wm.entries, k);
    const double mass = m.initial.transpose() * powered.m *
                        Eigen::VectorXd::Ones(m.num_states);
    if (mass <= 0.0) return kNegInf;
    return std::log(mass) + powered.log_scale;
}

double repeat_probability(const Machine& m, const std::string& word, long k) {
    return std::exp(log_repeat_probability(m, word, k));
}

std::vector<double> repeat_log_profile(const Machine& m, const std::string& word,
                                       int k_max, const Eigen::VectorXd* initial) {
    if (k_max < 1) throw InputError("profile horizon must be >= 1");
    const WordMatrix wm = word_matrix(m, word);
    Eigen::RowVectorXd u = (initial ? *initial : m.initial).transpose();
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(k_max));
    double log_scale = 0.0;
    bool dead = false;
    for (int k = 1; k <= k_max; ++k) {
        if (!dead) {
            u = u * wm.entries;
            const double mass = u.sum();
            if (mass <= 0.0) {
                dead = true;
            } else {
                log_scale += std::log(mass);
                u /= mass;
            }
        }
        logs.push_back(dead ? kNegInf : log_scale);
    }
    return logs;
}

DecayProfile asymptotic_decay(const Machine& m, const std::string& word,
                              const Eigen::VectorXd& initial,
                              const DecayOptions& opts) {
    DecayProfile out;
    const WordMatrix wm = word_matrix(m, word);
    const SpectralResult sr = spectral_radius(wm.entries, opts.spectral);
    out.spectral_radius = sr.value;
    out.nilpotent = sr.nilpotent;
    out.log_probabilities = repeat_log_profile(m, word, opts.horizon, &initial);
    out.possibility_violated =
        sr.nilpotent || out.log_probabilities.back() == kNegInf;

    out.ratios.reserve(out.log_probabilities.size());
    double running = 0.0;
    for (std::size_t i = 0; i + 1 < out.log_probabilities.size(); ++i) {
        const double r =
            std::exp(out.log_probabilities[i + 1] - out.log_probabilities[i]);
        out.ratios.push_back(r);
        running = std::max(running, r);
        out.ratio_running_max.push_back(running);
    }

    // Oscillation scan over the second half of the ratio sequence.
    int direction_changes = 0;
    int last_sign = 0;
    for (std::size_t i = out.ratios.size() / 2; i + 1 < out.ratios.size(); ++i) {
        const double diff = out.ratios[i + 1] - out.ratios[i];
        const double scale = std::max(out.ratios[i], 1e-300);
        if (std::abs(diff) <= 1e-9 * scale) continue;
        const int sign = diff > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++direction_changes;
        last_sign = sign;
    }
    out.oscillation_suspected = direction_changes >= 2;
    return out;
}

double convergence_ratio(const Machine& m, const std::string& word, int k) {
    if (k < 1) throw InputError("convergence ratio needs k >= 1");
    const SpectralResult sr = spectral_radius(word_matrix(m, word).entries);
    if (sr.nilpotent || sr.value <= 0.0)
        throw DomainError("possibility condition violated: zero spectral radius");
    const double logp = log_repeat_probability(m, word, k);
    if (logp == kNegInf)
        throw DomainError("possibility condition violated: P(w^k) = 0");
    return std::exp(logp / static_cast<double>(k)) / sr.value;
}

double convergence_ratio_offset(const Machine& m, const std::string& word, int q,
                                int k) {
    if (q < 1 || k < 1) throw InputError("offset convergence ratio needs q, k >= 1");
    const SpectralResult sr = spectral_radius(word_matrix(m, word).entries);
    if (sr.nilpotent || sr.value <= 0.0)
        throw DomainError("possibility condition violated: zero spectral radius");
    const auto logs = repeat_log_profile(m, word, q + k);
    const double log_q = logs[static_cast<std::size_t>(q - 1)];
    const double log_qk = logs[static_cast<std::size_t>(q + k - 1)];
    if (log_q == kNegInf)
        throw DomainError("possibility condition violated: P(w^q) = 0");
    return std::exp((log_qk - log_q) / static_cast<double>(k)) / sr.value;
}

double windowed_decay_rate(const Machine& m, const std::string& word,
                           int window_start) {
    if (window_start < 1) throw InputError("window start must be >= 1");
    const int lo = window_start, hi = 2 * window_start;
    const auto logs = repeat_log_profile(m, word, hi);
    // Least-squares slope of log P(w^k) against k over [lo, hi].
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int k = lo; k <= hi; ++k) {
        const double y = logs[static_cast<std::size_t>(k - 1)];
        if (y == kNegInf)
            throw DomainError("possibility condition violated inside slope window");
        sx += k;
        sy += y;
        sxx += static_cast<double>(k) * k;
        sxy += k * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::exp(slope);
}

}  // namespace colstate::fsm
