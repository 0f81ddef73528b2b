#include "colstate/fsm/word_matrix.hpp"

#include "colstate/errors.hpp"

namespace colstate::fsm {

WordMatrix word_matrix(const Machine& m, const std::string& word) {
    if (word.empty()) throw InputError("word must be non-empty");
    Eigen::MatrixXd acc = m.matrix_for(word[0]);
    for (std::size_t i = 1; i < word.size(); ++i) {
        acc = acc * m.matrix_for(word[i]);
    }
    return WordMatrix{word, std::move(acc)};
}

}  // namespace colstate::fsm
