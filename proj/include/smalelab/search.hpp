#pragma once

#include <cstdint>
#include <vector>

#include "smalelab/polynomial.hpp"

namespace smalelab {

struct SearchConfig {
    int degree = 3;
    int starts = 64;
    int max_iterations = 4000;
    uint64_t seed = 0;
    double simplex_tolerance = 1e-8;
    bool circle_only = false;
    int workers = 0;  // 0 = default worker count
};

struct SearchResult {
    double best_rho = 0.0;
    std::vector<Cplx> best_roots;  // nonzero roots; the origin root is implied
    long objective_evaluations = 0;
    bool extremal_form = false;  // is_extremal_form of the best polynomial at 1e-3
    double gap_to_bound = 0.0;   // (n-1)/n - best_rho
};

/// Multi-start Nelder-Mead maximization of the associated number over the
/// 2(n-1) real root parameters. Out-of-class configurations score 0. Start
/// points draw roots uniformly from the disk of radius 1.5, except start 0,
/// which perturbs the known equality configuration by 10%. Deterministic for
/// a fixed config: per-start streams derive from (seed, start index) and the
/// reduction is index-ordered, so the result is independent of the worker
/// count.
SearchResult maximize_rho(const SearchConfig& config);

/// Same optimizer restricted to roots on the unit circle (n-1 angles).
SearchResult maximize_rho_circle(const SearchConfig& config);

/// True when all middle coefficients a_2..a_{n-1} have modulus below
/// tol * max(|a_1|, |a_n|); the extremal family keeps only the two end terms.
bool is_extremal_form(const Polynomial& p, double tol);

}  // namespace smalelab
