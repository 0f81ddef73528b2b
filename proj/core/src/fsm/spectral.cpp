#include "colstate/fsm/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cfloat>
#include <cmath>
#include <limits>

#include "colstate/errors.hpp"
#include "colstate/fsm/classes.hpp"

namespace colstate::fsm {

namespace {

double dense_radius(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

SpectralResult spectral_radius(const Eigen::MatrixXd& m, const SpectralOptions& opts) {
    if (m.rows() != m.cols()) throw InputError("spectral_radius requires a square matrix");
    if ((m.array() < 0.0).any())
        throw InputError("spectral_radius requires a non-negative matrix");
    const int n = static_cast<int>(m.rows());

    SpectralResult res;
    if (n == 0) {
        res.nilpotent = true;
        return res;
    }
    if (!decompose_classes(m).has_cycle()) {
        // No positive cycle: powers vanish after n steps.
        res.nilpotent = true;
        res.converged = true;
        return res;
    }
    if (n == 1) {
        res.value = m(0, 0);
        res.converged = true;
        return res;
    }

    // Power iteration from the all-ones vector, which overlaps every
    // non-negative eigenvector. Once successive Rayleigh estimates agree
    // to `tolerance` we keep stepping while the gap still shrinks; the
    // extra steps are cheap and push the estimate to rounding noise.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
    double estimate = 0.0;
    double prev_gap = std::numeric_limits<double>::infinity();
    bool within_tolerance = false;
    const long dense_cutoff =
        n <= opts.dense_fallback_max_dim ? opts.stall_iterations : opts.max_iterations;
    for (long it = 1; it <= dense_cutoff; ++it) {
        const Eigen::VectorXd w = m * v;
        const double norm = w.norm();
        if (norm == 0.0) {
            // Numerically annihilated despite a structural cycle; the
            // cycle weight underflowed. Treat as converged tiny radius.
            res.value = 0.0;
            res.converged = true;
            res.iterations = it;
            return res;
        }
        const double new_estimate = v.dot(w);
        res.iterations = it;
        if (it > 1) {
            const double scale = std::max(1.0, std::abs(new_estimate));
            const double gap = std::abs(new_estimate - estimate);
            if (gap <= opts.tolerance * scale) within_tolerance = true;
            const bool at_noise_floor = gap <= 8.0 * DBL_EPSILON * scale;
            if (within_tolerance && (at_noise_floor || gap >= prev_gap)) {
                res.value = new_estimate;
                res.converged = true;
                return res;
            }
            prev_gap = gap;
        }
        estimate = new_estimate;
        v = w / norm;
    }

    if (n <= opts.dense_fallback_max_dim) {
        res.value = dense_radius(m);
        res.converged = true;
        res.used_dense_solver = true;
        return res;
    }
    res.value = estimate;
    res.converged = false;
    return res;
}

}  // namespace colstate::fsm
