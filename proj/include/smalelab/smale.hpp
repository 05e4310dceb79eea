#pragma once

#include <string>
#include <vector>

#include "smalelab/polynomial.hpp"

namespace smalelab {

/// One critical point zeta of p together with the quantities that decide
/// whether it is essential and whether p is simple there.
struct CriticalPointRecord {
    Cplx zeta;
    double derivative_residual;  // |p'(zeta)|
    double rho;                  // |p(zeta)| / (|zeta| |p'(0)|)
    bool essential;
    Cplx second_derivative;      // p''(zeta)
};

struct ClassCheck {
    bool in_class;
    bool monic;
    bool vanishes_at_origin;
    bool linear_term_nonzero;          // p'(0) != 0
    bool critical_values_nonzero;      // p(zeta) != 0 at every critical point
    std::string diagnostic;            // names the violated clauses, empty if none
};

struct RhoReport {
    std::vector<CriticalPointRecord> records;
    double rho;                        // min over records
    std::vector<int> essential_indices;
    bool in_class;
    bool simple;                       // p''(zeta) != 0 at every essential zeta
    double margin;                     // (n-1)/n - rho
    std::string diagnostic;
};

/// rho(p, zeta) = |p(zeta) / (zeta p'(0))|. Requires p(0)=0, p'(0)!=0,
/// zeta != 0 and p'(zeta) ~ 0 (zeta must be a critical point).
double rho_at(const Polynomial& p, Cplx zeta);

/// The associated number rho(p) = min rho(p, zeta) over critical points,
/// with the essential set, simplicity and class diagnostics. Non-monic
/// inputs are normalized first (rho is invariant); class violations are
/// reported in the diagnostics, and a critical point that is also a root
/// yields rho = 0 with in_class = false.
RhoReport rho(const Polynomial& p);

/// Membership in the class of monic polynomials with p(0)=0, p'(0)!=0 and
/// p(zeta)!=0 at every critical point. Diagnosis is the output; never throws
/// on a violation.
ClassCheck is_in_class(const Polynomial& p);

/// min over critical points zeta of |D(zeta, z0)| / |p'(z0)|, computed as
/// rho(translate_to_origin(p, z0)). Requires p'(z0) != 0. Values >= 4 would
/// contradict the classical bound and raise a logic error.
double smale_quotient(const Polynomial& p, Cplx z0);

}  // namespace smalelab
