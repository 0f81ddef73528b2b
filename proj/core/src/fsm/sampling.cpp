#include "colstate/fsm/sampling.hpp"

#include <random>

#include "colstate/errors.hpp"
#include "colstate/rng.hpp"

namespace colstate::fsm {

std::uint64_t unifilar_structure_count(int p) {
    if (p < 1) throw InputError("state count must be >= 1");
    const std::uint64_t per_state =
        2ULL * static_cast<std::uint64_t>(p) +
        static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
    std::uint64_t total = 1;
    for (int i = 0; i < p; ++i) {
        if (total > UINT64_MAX / per_state)
            throw std::overflow_error("unifilar structure count exceeds 64 bits");
        total *= per_state;
    }
    return total;
}

Machine sample_unifilar(int p, std::mt19937_64& engine) {
    if (p < 1) throw InputError("state count must be >= 1");
    const std::uint64_t up = static_cast<std::uint64_t>(p);
    const std::uint64_t per_state = 2 * up + up * up;

    Machine m;
    m.num_states = p;
    m.alphabet = {'C', 'R'};
    m.symbol_matrices = {Eigen::MatrixXd::Zero(p, p), Eigen::MatrixXd::Zero(p, p)};
    m.initial = Eigen::VectorXd::Constant(p, 1.0 / p);

    for (int state = 0; state < p; ++state) {
        const std::uint64_t id = uniform_index(engine, per_state);
        if (id < 2 * up) {
            // Single outgoing edge: id encodes symbol then target.
            const int symbol = static_cast<int>(id / up);
            const int target = static_cast<int>(id % up);
            m.symbol_matrices[static_cast<std::size_t>(symbol)](state, target) = 1.0;
        } else {
            // One edge per symbol; the C edge gets weight u.
            const std::uint64_t rest = id - 2 * up;
            const int target_c = static_cast<int>(rest / up);
            const int target_r = static_cast<int>(rest % up);
            const double u = uniform_open(engine);
            m.symbol_matrices[0](state, target_c) = u;
            m.symbol_matrices[1](state, target_r) = 1.0 - u;
        }
    }
    return m;
}

Machine sample_unifilar(int p, std::uint64_t seed) {
    auto engine = make_engine(seed);
    return sample_unifilar(p, engine);
}

std::uint64_t structure_key(const Machine& m) {
    const std::uint64_t up = static_cast<std::uint64_t>(m.num_states);
    const std::uint64_t per_state = 2 * up + up * up;
    std::uint64_t key = 0;
    for (int state = 0; state < m.num_states; ++state) {
        int target_c = -1, target_r = -1;
        for (int j = 0; j < m.num_states; ++j) {
            if (m.symbol_matrices[0](state, j) > 0.0) target_c = j;
            if (m.symbol_matrices[1](state, j) > 0.0) target_r = j;
        }
        std::uint64_t id;
        if (target_c >= 0 && target_r >= 0) {
            id = 2 * up + static_cast<std::uint64_t>(target_c) * up +
                 static_cast<std::uint64_t>(target_r);
        } else if (target_c >= 0) {
            id = static_cast<std::uint64_t>(target_c);
        } else {
            id = up + static_cast<std::uint64_t>(target_r);
        }
        key = key * per_state + id;
    }
    return key;
}

std::string simulate(const Machine& m, long length, std::uint64_t seed) {
    if (length < 1) throw InputError("simulation length must be >= 1");
    auto engine = make_engine(seed);

    // Flattened per-state CDF over (symbol, target) pairs.
    struct Edge {
        double cum;
        Symbol symbol;
        int target;
    };
    std::vector<std::vector<Edge>> cdf(static_cast<std::size_t>(m.num_states));
    for (int i = 0; i < m.num_states; ++i) {
        double acc = 0.0;
        for (std::size_t s = 0; s < m.alphabet.size(); ++s) {
            for (int j = 0; j < m.num_states; ++j) {
                const double w = m.symbol_matrices[s](i, j);
                if (w > 0.0) {
                    acc += w;
                    cdf[static_cast<std::size_t>(i)].push_back({acc, m.alphabet[s], j});
                }
            }
        }
    }

    int state = m.num_states - 1;  // fallthrough target if rounding bites
    {
        const double u = uniform_double(engine);
        double acc = 0.0;
        for (int i = 0; i < m.num_states; ++i) {
            acc += m.initial(i);
            if (u < acc) {
                state = i;
                break;
            }
        }
    }

    std::string out;
    out.reserve(static_cast<std::size_t>(length));
    for (long t = 0; t < length; ++t) {
        const auto& edges = cdf[static_cast<std::size_t>(state)];
        const double u = uniform_double(engine) * edges.back().cum;
        const Edge* chosen = &edges.back();
        for (const auto& e : edges) {
            if (u < e.cum) {
                chosen = &e;
                break;
            }
        }
        out.push_back(chosen->symbol);
        state = chosen->target;
    }
    return out;
}

}  // namespace colstate::fsm
