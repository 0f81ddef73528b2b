#pragma once

#include <random>

#include "colstate/fsm/machine.hpp"
#include "colstate/rng.hpp"

namespace generators {

// Dense (generally non-unifilar) random machine over {C, R}: every
// (state, symbol, target) weight is drawn, sparsified, and rows are
// normalized to sum to one.
inline colstate::fsm::Machine random_dense_machine(int p, std::mt19937_64& eng,
                                                   double zero_fraction = 0.3) {
    using colstate::uniform_double;
    colstate::fsm::Machine m;
    m.num_states = p;
    m.alphabet = {'C', 'R'};
    m.symbol_matrices = {Eigen::MatrixXd::Zero(p, p), Eigen::MatrixXd::Zero(p, p)};
    for (int i = 0; i < p; ++i) {
        double row_sum = 0.0;
        while (row_sum == 0.0) {
            for (auto& mat : m.symbol_matrices)
                for (int j = 0; j < p; ++j)
                    mat(i, j) = uniform_double(eng) < zero_fraction
                                    ? 0.0
                                    : uniform_double(eng);
            row_sum = m.symbol_matrices[0].row(i).sum() +
                      m.symbol_matrices[1].row(i).sum();
        }
        for (auto& mat : m.symbol_matrices) mat.row(i) /= row_sum;
    }
    m.initial = Eigen::VectorXd::Zero(p);
    double total = 0.0;
    for (int i = 0; i < p; ++i) {
        m.initial(i) = 0.05 + uniform_double(eng);
        total += m.initial(i);
    }
    m.initial /= total;
    return m;
}

}  // namespace generators
