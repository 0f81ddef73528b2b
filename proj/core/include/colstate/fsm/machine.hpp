#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace colstate::fsm {

using Symbol = char;

// Probabilistic Mealy machine: a transition emits a symbol, so the
// one-step behavior is a family of sub-stochastic matrices, one per
// symbol, whose sum is row-stochastic.
struct Machine {
    int num_states = 0;
    std::vector<Symbol> alphabet;
    // symbol_matrices[s](i, j) = probability of moving i -> j while
    // emitting alphabet[s].
    std::vector<Eigen::MatrixXd> symbol_matrices;
    Eigen::VectorXd initial;

    int symbol_index(Symbol s) const;
    const Eigen::MatrixXd& matrix_for(Symbol s) const;

    // Sum over symbols: the plain state-transition matrix.
    Eigen::MatrixXd one_step_matrix() const;

    // At most one positive target per (state, symbol).
    bool is_unifilar() const;

    // Single SCC over the any-symbol edge graph.
    bool is_strongly_connected() const;

    // Throws InputError when row sums or the initial distribution are off
    // by more than `tol`, or any entry is negative.
    void validate(double tol = 1e-12) const;
};

// Convenience one-state machine over {C, R} emitting C with probability q.
Machine single_state_machine(double q);

// JSON file schema:
//   {"states": p, "alphabet": ["C","R"], "initial": [...],
//    "transitions": [{"from": i, "symbol": "C", "to": j, "prob": x}, ...]}
Machine load_machine_json(const std::string& path);
void save_machine_json(const Machine& m, const std::string& path);
Machine machine_from_json_text(const std::string& text);
std::string machine_to_json_text(const Machine& m);

}  // namespace colstate::fsm
