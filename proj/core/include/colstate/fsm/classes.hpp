#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "colstate/fsm/word_matrix.hpp"

namespace colstate::fsm {

enum class ClassKind { essential, inessential };

// Communicating-class structure of a non-negative matrix, read as the
// digraph of its positive entries. States whose out-row is entirely zero
// are nuisance indices and belong to no class; every other state belongs
// to exactly one class. A class is essential when no edge leaves it.
struct ClassDecomposition {
    std::vector<std::vector<int>> classes;
    std::vector<ClassKind> kinds;
    std::vector<int> nuisance_indices;
    // Condensation edges between class indices; acyclic by construction.
    std::vector<std::pair<int, int>> dag_edges;
    // Per class: whether it carries a cycle (size > 1 or a self-loop).
    // Acyclic singleton classes cannot repeat an index.
    std::vector<bool> cyclic;

    bool has_cycle() const {
        for (bool c : cyclic)
            if (c) return true;
        return false;
    }
};

ClassDecomposition decompose_classes(const Eigen::MatrixXd& m);

inline ClassDecomposition decompose_classes(const WordMatrix& wm) {
    return decompose_classes(wm.entries);
}

// True when some communicating class keeps all of its probability mass
// inside itself (in-class row sums of one): once entered, the process
// repeats the word forever. This is the structure that puts the
// spectral radius exactly at one and violates the decay-bound
// preconditions.
bool has_trapped_repetition(const Eigen::MatrixXd& m, double tol = 1e-12);

// Tarjan SCCs of an adjacency-list digraph, in reverse topological order
// of the condensation. Shared by the decomposition and the
// strong-connectivity screen used when sampling machines.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adjacency);

}  // namespace colstate::fsm
