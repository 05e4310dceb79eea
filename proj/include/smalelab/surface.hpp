#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "smalelab/polynomial.hpp"

namespace smalelab {

// ---------------------------------------------------------------------------
// Paths in the parameter plane
// ---------------------------------------------------------------------------

struct LineSegment {
    Cplx from, to;
};

struct ArcSegment {
    Cplx center;
    double radius;
    double from_angle;
    double to_angle;  // may differ by 2*pi*turns for full loops
};

using PathSegment = std::variant<LineSegment, ArcSegment>;

/// Piecewise path (line and circular-arc segments), parameterized by arc
/// length. Monodromy loops are exact circles, so closure is bit-clean.
struct PathSpec {
    std::vector<PathSegment> segments;
    int samples_hint = 0;  // >0 overrides the tracker's initial step density

    static PathSpec polyline(const std::vector<Cplx>& waypoints);
    static PathSpec circle(Cplx center, double radius, double start_angle = 0.0,
                           int turns = 1);

    /// Concatenate; other must start where this path ends.
    void append(const PathSpec& other);
    PathSpec reversed() const;

    Cplx start() const;
    Cplx end() const;
    bool is_closed(double tol = 1e-9) const;
    double length() const;

    /// Point and velocity (d point / d arc length) at t in [0, length()].
    void eval(double t, Cplx& point, Cplx& velocity) const;

    /// Minimum distance from the path to a point.
    double distance_to(Cplx point) const;
};

// ---------------------------------------------------------------------------
// The variation family Q(z, u) = (z - u) q(z)
// ---------------------------------------------------------------------------

/// One moving-root family: q(z) = z * prod (z - z_j) is the fixed factor,
/// base_u is the starting position of the moving root, anchor_zeta a critical
/// point of Q(., base_u). Immutable after construction; safe to share.
struct VariationFamily {
    Polynomial q, dq, ddq;
    std::vector<Cplx> fixed_roots;  // z_2 ... z_{n-1} (nonzero, fixed)
    Cplx base_u;                    // z_n
    Cplx anchor_zeta;               // zeta_0
    int degree_n = 0;
    Cplx prefactor;                 // base_u * zeta0 * q'(zeta0) / q(zeta0)^2
    double rho_anchor = 0.0;        // rho(Q(., base_u), zeta0)
};

/// Split p = (z - u) q(z) by the chosen moving root and anchor critical
/// point. Indices select from the lexicographically sorted nonzero roots and
/// critical points of p. Requires p in class with simple roots.
VariationFamily build_family(const Polynomial& p, int moving_root_index,
                             int anchor_index);

/// Q(., u) as an expanded polynomial.
Polynomial polynomial_at(const VariationFamily& fam, Cplx u);

/// dQ/dz at (z, u), i.e. q(z) + (z - u) q'(z).
Cplx q_prime_of_family(const VariationFamily& fam, Cplx z, Cplx u);

/// The critical points of Q(., u), lexicographically sorted (the fiber of the
/// surface over u).
std::vector<Cplx> fiber(const VariationFamily& fam, Cplx u);

/// Parameter of the critical point w: u = w + q(w)/q'(w). Throws when
/// q'(w) = 0 (the projection has a pole there).
Cplx projection(const VariationFamily& fam, Cplx w);

/// d zeta / d u from the implicit function: q'(z) / (2q'(z) + (z-u) q''(z)).
Cplx implicit_derivative(const VariationFamily& fam, Cplx z, Cplx u);

// ---------------------------------------------------------------------------
// Surface atlas: branch points and sheet structure at infinity
// ---------------------------------------------------------------------------

struct SheetInfo {
    enum class Kind { pole_sheet, finite_sheet };
    Kind kind = Kind::finite_sheet;
    Cplx zeta_start;                          // fiber point over base_u
    std::optional<Cplx> xi;                   // limiting critical point of q
    std::optional<Cplx> c;                    // limit of the transfer factor
    std::optional<double> u_over_zeta_limit;  // pole sheet only
    std::optional<double> pole_order_estimate;  // log-log growth diagnostic
};

struct SurfaceAtlas {
    std::vector<Cplx> branch_points;       // solutions of 2 q'^2 = q q''
    std::vector<Cplx> branch_projections;  // their parameters
    int sheet_count = 0;                   // n - 1
    std::vector<SheetInfo> sheets_at_infinity;  // empty until classified
};

/// All branch points (roots of 2 q'^2 - q q'', counted with multiplicity)
/// and their projections. sheets_at_infinity is left empty.
SurfaceAtlas branch_points(const VariationFamily& fam);

/// Continue every sheet along the outward ray to |u| = 1e4 and classify:
/// exactly one sheet diverges (pole sheet); the others converge to critical
/// points xi_k of q, where the transfer factor tends to
/// prefactor * q(xi_k) / xi_k. Throws if the matching is ambiguous.
std::vector<SheetInfo> classify_sheets_at_infinity(const VariationFamily& fam);

// ---------------------------------------------------------------------------
// Continuation
// ---------------------------------------------------------------------------

struct TraceSample {
    double t;          // arc-length parameter along the path
    Cplx u;
    Cplx zeta;
    Cplx zeta_prime;   // d zeta / d u at the sample
    double residual;   // |dQ/dz (zeta, u)|
};

struct ContinuationTrace {
    PathSpec path;
    std::vector<TraceSample> samples;
    Cplx f_closed;     // transfer factor, closed form, at the endpoint
    Cplx f_integral;   // transfer factor via the path integral
    Cplx g_value;      // normalized critical value at the endpoint
    double rho_endpoint = 0.0;
    int step_count = 0;
    double min_branch_distance = 0.0;
};

/// Predictor-corrector tracking of the critical point zeta(u) with
/// zeta(base_u) = anchor_zeta, from the path start (must be base_u) to its
/// end. Steps adapt: halve on corrector failure or on a sheet-jump
/// suspicion, double after three consecutive accepts. The returned trace
/// carries both transfer-factor routes and the endpoint identities.
ContinuationTrace continue_critical_point(const VariationFamily& fam,
                                          const PathSpec& path);

/// Transfer factor by the closed form
///   prefactor * q(zeta)^2 / (u zeta q'(zeta)).
/// Throws when any denominator falls below 1e-14 (proximity to a pole or
/// zero of the factor).
Cplx rho_transfer_closed(const VariationFamily& fam, Cplx u, Cplx zeta_u);

/// Transfer factor by the path integral
///   (zeta0 / zeta(u)) exp(-Int zeta(v) / ((zeta(v) - v) v) dv)
/// along the tracked path, composite Gauss-Legendre with adaptive
/// subdivision to a 1e-8 target. Node values of zeta(v) start from a cubic
/// Hermite interpolant between accepted samples and are Newton-polished.
Cplx rho_transfer_integral(const VariationFamily& fam, const ContinuationTrace& trace);

/// g(u, zeta) = (zeta/u - 1) * prod_j (zeta/z_j - 1); its modulus equals
/// rho(Q(., u), zeta).
Cplx normalized_critical_value(const VariationFamily& fam, Cplx u, Cplx zeta_u);

/// | rho(Q(., u_end), zeta_end)  -  rho_anchor * |f_closed| |, the two-route
/// consistency of the endpoint rho. Small on every admissible path.
double rho_identity_check(const VariationFamily& fam, const ContinuationTrace& trace);

/// Continue the whole fiber over the loop's start around the closed loop;
/// returns the induced permutation perm with perm[i] = arrival index. Sheets
/// are labeled by the lexicographically sorted fiber over the loop start.
std::vector<int> monodromy(const VariationFamily& fam, const PathSpec& loop);

}  // namespace smalelab
