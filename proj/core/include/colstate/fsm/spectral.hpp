#pragma once

#include <Eigen/Dense>

#include "colstate/fsm/word_matrix.hpp"

namespace colstate::fsm {

struct SpectralOptions {
    double tolerance = 1e-10;
    long max_iterations = 100000;
    // Iterations before a stalled power iteration hands off to a dense
    // eigensolver (periodic spectra make the iteration oscillate).
    long stall_iterations = 2000;
    int dense_fallback_max_dim = 64;
};

struct SpectralResult {
    double value = 0.0;
    // Possibility condition of the decay bound fails: every eigenvalue is
    // zero, so no exponential rate exists.
    bool nilpotent = false;
    bool converged = false;
    bool used_dense_solver = false;
    long iterations = 0;
};

// Largest eigenvalue modulus of a non-negative matrix. Nilpotency is
// detected structurally (no cyclic communicating class) before any
// numerics, so a true zero radius is exact.
SpectralResult spectral_radius(const Eigen::MatrixXd& m,
                               const SpectralOptions& opts = {});

inline SpectralResult spectral_radius(const WordMatrix& wm,
                                      const SpectralOptions& opts = {}) {
    return spectral_radius(wm.entries, opts);
}

}  // namespace colstate::fsm
