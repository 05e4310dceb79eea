#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smalelab/polynomial.hpp"

namespace smalelab {

/// A random class member of the given degree: monic, one root at the origin,
/// the others uniform in the unit disk (moduli kept above 1e-3 and class
/// violations resampled). Sample `index` always draws from the same stream,
/// so batches are reproducible for any worker count.
std::vector<Cplx> random_class_roots(int degree, uint64_t seed, uint64_t index);

struct DegreeSummary {
    int degree = 0;
    int samples = 0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    double margin_min = 0.0;   // margin = (n-1)/n - rho
    double margin_max = 0.0;
    double margin_mean = 0.0;
    bool smale_bound_ok = true;               // every rho < 4
    std::vector<std::vector<Cplx>> violations;  // root sets with rho > bound + tol
};

struct ExperimentSummary {
    std::string command;
    uint64_t seed = 0;
    int sample_count = 0;  // per degree
    int degree_min = 0;
    int degree_max = 0;
    double tol = 1e-9;
    std::vector<DegreeSummary> degrees;
    double wall_time_seconds = 0.0;  // excluded from determinism comparisons
};

/// Sample `samples` random class members per degree and record the observed
/// rho range and margins against (n-1)/n. Root sets exceeding the bound by
/// more than tol are kept verbatim so the finding reproduces on reload.
ExperimentSummary verify_bound(int degree_min, int degree_max, int samples,
                               uint64_t seed, double tol = 1e-9, int workers = 0);

/// Deterministic text form of the mathematical content (wall time omitted),
/// 17 significant digits; used for run-to-run comparisons.
std::string summary_fingerprint(const ExperimentSummary& summary);

}  // namespace smalelab
