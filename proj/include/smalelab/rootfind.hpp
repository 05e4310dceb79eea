#pragma once

#include <vector>

#include "smalelab/polynomial.hpp"

namespace smalelab {

struct RootFindReport {
    std::vector<Cplx> roots;        // one entry per degree, multiplicity repeated
    std::vector<double> residuals;  // |p(root)|
    int iterations = 0;
    bool converged = false;
};

/// All complex roots with multiplicity. Aberth-Ehrlich simultaneous iteration
/// from initial guesses on a circle of the Cauchy bound radius, Newton
/// polished; exact origin roots are deflated first. On non-convergence after
/// 200 sweeps the iteration restarts once from a rotated, perturbed circle,
/// then reports converged = false. Requires degree >= 1.
RootFindReport all_roots(const Polynomial& p);

/// Roots of p'. Requires degree >= 2.
RootFindReport critical_points(const Polynomial& p);

struct RootCluster {
    Cplx center;       // mean of the clustered roots
    int multiplicity;
};

/// Merge roots within tol of each other; multiplicities sum to the degree.
std::vector<RootCluster> cluster_multiplicities(const RootFindReport& report,
                                                double tol = 1e-7);

}  // namespace smalelab
