#pragma once

#include <Eigen/Dense>
#include <string>

#include "colstate/fsm/machine.hpp"

namespace colstate::fsm {

// Sub-stochastic matrix whose (i, j) entry is the probability of moving
// from state i to state j while emitting the full word.
struct WordMatrix {
    std::string word;
    Eigen::MatrixXd entries;
};

// Chained product A(w_0) A(w_1) ... A(w_{|w|-1}). Entrywise it is bounded
// above by the |w|-step transition matrix.
WordMatrix word_matrix(const Machine& m, const std::string& word);

}  // namespace colstate::fsm
