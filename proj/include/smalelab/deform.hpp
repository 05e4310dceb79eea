#pragma once

#include <string>
#include <vector>

#include "smalelab/polynomial.hpp"
#include "smalelab/surface.hpp"

namespace smalelab {

struct DeformationStep {
    Polynomial before;
    Polynomial after;
    Cplx moved_root_from;
    Cplx moved_root_to;  // modulus 1
    double rho_before = 0.0;
    double rho_after = 0.0;
    int boundary_samples = 0;
    bool certificate_ok = false;  // rho_after >= rho_before - 1e-9
    std::string diagnostic;       // skipped boundary samples etc.
};

struct SaturationReport {
    std::vector<DeformationStep> steps;
    Polynomial final;
    std::vector<double> rho_trajectory;  // rho before each step, then final
    bool all_on_circle = false;
};

/// Move the chosen interior root of a normalized class polynomial onto the
/// unit circle at the position maximizing the associated number: rho(Q(.,u))
/// is evaluated at `samples` equispaced points of |u| = 1 (each by fresh
/// root-finding), the best angle refined by golden section to 1e-10. The
/// step is returned even when no boundary position certifies
/// rho_after >= rho_before - 1e-9 (certificate_ok = false then). The root
/// index selects from the lexicographically sorted nonzero roots.
DeformationStep push_zero_to_circle(const Polynomial& p, int moving_root_index,
                                    int samples = 720);

/// Repeatedly push the interior root of smallest modulus to the circle until
/// none remains (at most n-1 steps). The input is normalized first.
SaturationReport circle_saturate(const Polynomial& p, int samples = 720);

struct SheetProbeValue {
    Cplx zeta;
    Cplx f;
    bool is_pole_sheet = false;
    bool flag_ok = false;  // pole: |f| > 1; finite: |f| > |c_k|/2
};

struct BlowupProbeRow {
    Cplx u0;     // boundary sample of modulus r
    double rho;  // rho(Q(., u0)), minimum over the fiber
    std::vector<SheetProbeValue> sheets;
};

/// Sample u0 of modulus r >= 1 around the circle and report, per fiber
/// point, the transfer factor and whether the large-r magnitude thresholds
/// hold (|f| > 1 on the pole sheet, |f| > |c_k|/2 on the finite sheets).
std::vector<BlowupProbeRow> blowup_probe(const VariationFamily& fam, double r,
                                         int boundary_samples);

}  // namespace smalelab
