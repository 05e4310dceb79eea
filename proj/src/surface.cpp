#include "smalelab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "smalelab/rootfind.hpp"
#include "smalelab/smale.hpp"

namespace smalelab {

namespace {

constexpr double kBranchClearance = 1e-6;
constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonMaxIts = 5;
constexpr double kIntegralTarget = 1e-8;
constexpr double kPoleClearance = 1e-4;

bool lex_less(Cplx a, Cplx b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

double two_pi() { return 2.0 * std::numbers::pi; }

}  // namespace

// ---------------------------------------------------------------------------
// PathSpec
// ---------------------------------------------------------------------------

namespace {

double segment_length(const PathSegment& seg) {
    if (const auto* line = std::get_if<LineSegment>(&seg))
        return std::abs(line->to - line->from);
    const auto& arc = std::get<ArcSegment>(seg);
    return arc.radius * std::abs(arc.to_angle - arc.from_angle);
}

Cplx segment_start(const PathSegment& seg) {
    if (const auto* line = std::get_if<LineSegment>(&seg))
        return line->from;
    const auto& arc = std::get<ArcSegment>(seg);
    return arc.center + arc.radius * Cplx(std::cos(arc.from_angle), std::sin(arc.from_angle));
}

Cplx segment_end(const PathSegment& seg) {
    if (const auto* line = std::get_if<LineSegment>(&seg))
        return line->to;
    const auto& arc = std::get<ArcSegment>(seg);
    return arc.center + arc.radius * Cplx(std::cos(arc.to_angle), std::sin(arc.to_angle));
}

double segment_distance(const PathSegment& seg, Cplx x) {
    if (const auto* line = std::get_if<LineSegment>(&seg)) {
        const Cplx d = line->to - line->from;
        const double len2 = std::norm(d);
        if (len2 == 0.0)
            return std::abs(x - line->from);
        double lam = ((x - line->from) * std::conj(d)).real() / len2;
        lam = std::clamp(lam, 0.0, 1.0);
        return std::abs(x - (line->from + lam * d));
    }
    const auto& arc = std::get<ArcSegment>(seg);
    const Cplx rel = x - arc.center;
    const double sweep = arc.to_angle - arc.from_angle;
    if (std::abs(sweep) >= two_pi() - 1e-15)
        return std::abs(std::abs(rel) - arc.radius);
    // is the angle of x inside the swept sector?
    const double lo = std::min(arc.from_angle, arc.to_angle);
    const double hi = std::max(arc.from_angle, arc.to_angle);
    double th = std::arg(rel);
    while (th < lo) th += two_pi();
    if (th <= hi)
        return std::abs(std::abs(rel) - arc.radius);
    return std::min(std::abs(x - segment_start(seg)), std::abs(x - segment_end(seg)));
}

}  // namespace

PathSpec PathSpec::polyline(const std::vector<Cplx>& waypoints) {
    if (waypoints.size() < 2)
        throw std::invalid_argument("path: a polyline needs at least 2 waypoints");
    for (Cplx w : waypoints)
        if (!is_finite(w))
            throw std::invalid_argument("path: non-finite waypoint");
    PathSpec path;
    for (size_t i = 0; i + 1 < waypoints.size(); ++i)
        path.segments.push_back(LineSegment{waypoints[i], waypoints[i + 1]});
    return path;
}

PathSpec PathSpec::circle(Cplx center, double radius, double start_angle, int turns) {
    if (!(radius > 0.0) || turns == 0)
        throw std::invalid_argument("path: circle needs positive radius and nonzero turns");
    PathSpec path;
    path.segments.push_back(
        ArcSegment{center, radius, start_angle, start_angle + two_pi() * turns});
    return path;
}

void PathSpec::append(const PathSpec& other) {
    if (!segments.empty() && !other.segments.empty() &&
        std::abs(end() - other.start()) > 1e-9 * (1.0 + std::abs(end())))
        throw std::invalid_argument("path: appended path must start at the current end");
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
}

PathSpec PathSpec::reversed() const {
    PathSpec rev;
    rev.samples_hint = samples_hint;
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        if (const auto* line = std::get_if<LineSegment>(&*it))
            rev.segments.push_back(LineSegment{line->to, line->from});
        else {
            const auto& arc = std::get<ArcSegment>(*it);
            rev.segments.push_back(ArcSegment{arc.center, arc.radius, arc.to_angle, arc.from_angle});
        }
    }
    return rev;
}

Cplx PathSpec::start() const {
    if (segments.empty())
        throw std::invalid_argument("path: empty");
    return segment_start(segments.front());
}

Cplx PathSpec::end() const {
    if (segments.empty())
        throw std::invalid_argument("path: empty");
    return segment_end(segments.back());
}

bool PathSpec::is_closed(double tol) const {
    return std::abs(end() - start()) <= tol * (1.0 + std::abs(start()));
}

double PathSpec::length() const {
    double total = 0.0;
    for (const PathSegment& seg : segments)
        total += segment_length(seg);
    return total;
}

void PathSpec::eval(double t, Cplx& point, Cplx& velocity) const {
    double acc = 0.0;
    for (const PathSegment& seg : segments) {
        const double len = segment_length(seg);
        if (len == 0.0)
            continue;
        if (t <= acc + len || &seg == &segments.back()) {
            const double lam = std::clamp((t - acc) / len, 0.0, 1.0);
            if (const auto* line = std::get_if<LineSegment>(&seg)) {
                point = line->from + lam * (line->to - line->from);
                velocity = (line->to - line->from) / len;
            } else {
                const auto& arc = std::get<ArcSegment>(seg);
                const double th = arc.from_angle + lam * (arc.to_angle - arc.from_angle);
                const double dth = (arc.to_angle - arc.from_angle) / len;
                point = arc.center + arc.radius * Cplx(std::cos(th), std::sin(th));
                velocity = Cplx(0.0, 1.0) * arc.radius * dth * Cplx(std::cos(th), std::sin(th));
            }
            return;
        }
        acc += len;
    }
    // zero-length path
    point = start();
    velocity = Cplx(0.0);
}

double PathSpec::distance_to(Cplx x) const {
    double best = std::numeric_limits<double>::max();
    for (const PathSegment& seg : segments)
        best = std::min(best, segment_distance(seg, x));
    return best;
}

// ---------------------------------------------------------------------------
// Family construction and pointwise quantities
// ---------------------------------------------------------------------------

Cplx q_prime_of_family(const VariationFamily& fam, Cplx z, Cplx u) {
    return fam.q(z) + (z - u) * fam.dq(z);
}

Cplx implicit_derivative(const VariationFamily& fam, Cplx z, Cplx u) {
    return fam.dq(z) / (2.0 * fam.dq(z) + (z - u) * fam.ddq(z));
}

namespace {

// Newton on w -> q(w) + (w - u) q'(w); returns false if the correction does
// not drop below tol*(1+|w|) within max_its steps. On success `displacement`
// holds the distance moved from the initial guess.
bool newton_correct(const VariationFamily& fam, Cplx u, Cplx& w, double tol,
                    int max_its, double* displacement = nullptr) {
    const Cplx w0 = w;
    for (int it = 0; it < max_its; ++it) {
        const Cplx value = q_prime_of_family(fam, w, u);
        const Cplx slope = 2.0 * fam.dq(w) + (w - u) * fam.ddq(w);
        if (slope == Cplx(0.0))
            return false;
        const Cplx step = value / slope;
        w -= step;
        if (std::abs(step) <= tol * (1.0 + std::abs(w))) {
            if (displacement)
                *displacement = std::abs(w - w0);
            return true;
        }
    }
    return false;
}

double min_pairwise_distance(const std::vector<Cplx>& pts) {
    double best = std::numeric_limits<double>::max();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, std::abs(pts[i] - pts[j]));
    return best;
}

}  // namespace

VariationFamily build_family(const Polynomial& p, int moving_root_index,
                             int anchor_index) {
    ClassCheck check = is_in_class(p);
    if (!check.in_class)
        throw std::invalid_argument("build_family: polynomial not in class (" +
                                    check.diagnostic + ")");

    RootFindReport roots = all_roots(p);
    if (!roots.converged)
        throw std::runtime_error("build_family: root finding did not converge");
    for (const RootCluster& cluster : cluster_multiplicities(roots))
        if (cluster.multiplicity > 1)
            throw std::invalid_argument("build_family: multiple roots");

    std::vector<Cplx> nonzero;
    for (const Cplx& z : roots.roots)
        if (std::abs(z) > 1e-12)
            nonzero.push_back(z);
    std::sort(nonzero.begin(), nonzero.end(), lex_less);
    const int n = p.degree();
    if (static_cast<int>(nonzero.size()) != n - 1)
        throw std::invalid_argument("build_family: expected exactly one root at the origin");
    if (moving_root_index < 0 || moving_root_index >= n - 1)
        throw std::invalid_argument("build_family: moving root index out of range");

    VariationFamily fam;
    fam.base_u = nonzero[static_cast<size_t>(moving_root_index)];
    for (int i = 0; i < n - 1; ++i)
        if (i != moving_root_index)
            fam.fixed_roots.push_back(nonzero[static_cast<size_t>(i)]);

    RootConfiguration cfg;
    cfg.roots = fam.fixed_roots;
    cfg.includes_origin = true;
    fam.q = from_roots(cfg, Cplx(1.0));
    fam.dq = derivative(fam.q);
    fam.ddq = derivative(fam.dq);
    fam.degree_n = n;

    RootFindReport crit = critical_points(p);
    if (!crit.converged)
        throw std::runtime_error("build_family: critical points did not converge");
    std::vector<Cplx> zetas = crit.roots;
    std::sort(zetas.begin(), zetas.end(), lex_less);
    if (anchor_index < 0 || anchor_index >= static_cast<int>(zetas.size()))
        throw std::invalid_argument("build_family: anchor index out of range");
    fam.anchor_zeta = zetas[static_cast<size_t>(anchor_index)];
    // tighten the anchor against the factored form of Q'
    newton_correct(fam, fam.base_u, fam.anchor_zeta, 1e-14, 20);

    if (std::abs(p(fam.anchor_zeta)) <= 1e-10)
        throw std::invalid_argument("build_family: p vanishes at the anchor critical point");
    const Cplx qz0 = fam.q(fam.anchor_zeta);
    fam.prefactor = fam.base_u * fam.anchor_zeta * fam.dq(fam.anchor_zeta) / (qz0 * qz0);
    fam.rho_anchor = std::abs(p(fam.anchor_zeta)) /
                     (std::abs(fam.anchor_zeta) * std::abs(p.coefficient(1)));
    return fam;
}

Polynomial polynomial_at(const VariationFamily& fam, Cplx u) {
    RootConfiguration cfg;
    cfg.roots = fam.fixed_roots;
    cfg.roots.push_back(u);
    cfg.includes_origin = true;
    return from_roots(cfg, Cplx(1.0));
}

std::vector<Cplx> fiber(const VariationFamily& fam, Cplx u) {
    // coefficients of q(z) + (z - u) q'(z), degree n-1
    const auto& qc = fam.q.coefficients();
    const auto& dc = fam.dq.coefficients();
    std::vector<Cplx> c(qc.size(), Cplx(0.0));
    for (size_t k = 0; k < qc.size(); ++k)
        c[k] = qc[k];
    for (size_t k = 0; k < dc.size(); ++k) {
        c[k] -= u * dc[k];
        c[k + 1] += dc[k];
    }
    RootFindReport report = all_roots(Polynomial(std::move(c)));
    if (!report.converged)
        throw std::runtime_error("fiber: root finding did not converge");
    std::vector<Cplx> pts = report.roots;
    std::sort(pts.begin(), pts.end(), lex_less);
    return pts;
}

Cplx projection(const VariationFamily& fam, Cplx w) {
    const Cplx dqw = fam.dq(w);
    if (std::abs(dqw) <= 1e-14 * (1.0 + fam.dq.coefficient_scale()))
        throw std::invalid_argument("projection: pole at a critical point of q");
    return w + fam.q(w) / dqw;
}

// ---------------------------------------------------------------------------
// Branch points
// ---------------------------------------------------------------------------

SurfaceAtlas branch_points(const VariationFamily& fam) {
    SurfaceAtlas atlas;
    atlas.sheet_count = fam.degree_n - 1;
    Polynomial cond = 2.0 * (fam.dq * fam.dq) - fam.q * fam.ddq;
    if (cond.degree() >= 1) {
        RootFindReport report = all_roots(cond);
        if (!report.converged)
            throw std::runtime_error("branch_points: root finding did not converge");
        std::vector<Cplx> pts = report.roots;
        std::sort(pts.begin(), pts.end(), lex_less);
        for (const Cplx& w : pts) {
            if (!(std::abs(cond(w)) < 1e-8))
                throw std::runtime_error("branch_points: residual above tolerance");
            atlas.branch_points.push_back(w);
            atlas.branch_projections.push_back(projection(fam, w));
        }
    }
    return atlas;
}

// ---------------------------------------------------------------------------
// Tracking
// ---------------------------------------------------------------------------

namespace {

struct TrackerSettings {
    double initial_frac = 1e-2;
    double max_frac = 5e-2;
};

// Predictor-corrector continuation of one critical point along the path.
// The caller has already verified branch clearance.
std::vector<TraceSample> track(const VariationFamily& fam, const PathSpec& path,
                               Cplx zeta_start) {
    std::vector<TraceSample> samples;
    const double n = static_cast<double>(fam.degree_n);

    auto record = [&](double t, Cplx u, Cplx zeta) {
        const double residual = std::abs(q_prime_of_family(fam, zeta, u));
        if (!(residual < 1e-10 * std::pow(1.0 + std::abs(u), n)))
            throw std::runtime_error("continuation: residual invariant violated");
        samples.push_back({t, u, zeta, implicit_derivative(fam, zeta, u), residual});
    };

    Cplx u0 = path.start();
    Cplx zeta = zeta_start;
    if (!newton_correct(fam, u0, zeta, 1e-14, 20))
        throw std::invalid_argument("continuation: start point is not a critical point");
    record(0.0, u0, zeta);

    double t_begin = 0.0;
    for (const PathSegment& seg : path.segments) {
        const double seg_len = segment_length(seg);
        if (seg_len == 0.0)
            continue;
        const double t_end = t_begin + seg_len;
        double h = (path.samples_hint > 0) ? seg_len / path.samples_hint
                                           : TrackerSettings{}.initial_frac * seg_len;
        const double h_max = TrackerSettings{}.max_frac * seg_len;
        h = std::min(h, h_max);

        double t = t_begin;
        Cplx u = samples.back().u;
        int accepts_in_a_row = 0;
        while (t < t_end - 1e-15 * seg_len) {
            const double t_next = std::min(t + h, t_end);
            Cplx u_next, vel;
            path.eval(t_next, u_next, vel);

            Cplx pred = zeta + implicit_derivative(fam, zeta, u) * (u_next - u);
            Cplx corrected = pred;
            double displacement = 0.0;
            bool ok = newton_correct(fam, u_next, corrected, kNewtonTol, kNewtonMaxIts,
                                     &displacement);
            if (ok) {
                const double min_sep = min_pairwise_distance(fiber(fam, u_next));
                if (displacement > 0.5 * min_sep)
                    ok = false;  // landed suspiciously far: likely another sheet
            }
            if (!ok) {
                h *= 0.5;
                accepts_in_a_row = 0;
                if (h < 1e-12 * seg_len)
                    throw std::runtime_error("continuation: step underflow near a branch point");
                continue;
            }
            zeta = corrected;
            u = u_next;
            t = t_next;
            record(t, u, zeta);
            if (++accepts_in_a_row >= 3) {
                h = std::min(2.0 * h, h_max);
                accepts_in_a_row = 0;
            }
        }
        t_begin = t_end;
    }
    return samples;
}

double branch_clearance_of(const VariationFamily& fam, const PathSpec& path) {
    const SurfaceAtlas atlas = branch_points(fam);
    double best = std::numeric_limits<double>::max();
    for (const Cplx& proj : atlas.branch_projections)
        best = std::min(best, path.distance_to(proj));
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Transfer factor, both routes, and the endpoint identities
// ---------------------------------------------------------------------------

Cplx rho_transfer_closed(const VariationFamily& fam, Cplx u, Cplx zeta_u) {
    const Cplx dqz = fam.dq(zeta_u);
    if (std::abs(u) < 1e-14 || std::abs(zeta_u) < 1e-14 || std::abs(dqz) < 1e-14)
        throw std::invalid_argument("transfer factor: denominator too close to zero");
    const Cplx qz = fam.q(zeta_u);
    return fam.prefactor * qz * qz / (u * zeta_u * dqz);
}

Cplx normalized_critical_value(const VariationFamily& fam, Cplx u, Cplx zeta_u) {
    if (u == Cplx(0.0))
        throw std::invalid_argument("normalized_critical_value: u == 0");
    Cplx g = zeta_u / u - 1.0;
    for (const Cplx& zj : fam.fixed_roots)
        g *= zeta_u / zj - 1.0;
    return g;
}

namespace {

// 8-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
constexpr double kGlNodes[4] = {0.1834346424956498, 0.5255324099163290,
                                0.7966664774136267, 0.9602898564975362};
constexpr double kGlWeights[4] = {0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

template <class F>
Cplx gauss8(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Cplx sum(0.0);
    for (int k = 0; k < 4; ++k) {
        sum += kGlWeights[k] * (f(mid + half * kGlNodes[k]) + f(mid - half * kGlNodes[k]));
    }
    return half * sum;
}

template <class F>
Cplx adaptive_gauss(const F& f, double a, double b, double tol, int depth) {
    const Cplx whole = gauss8(f, a, b);
    const double mid = 0.5 * (a + b);
    const Cplx halves = gauss8(f, a, mid) + gauss8(f, mid, b);
    if (std::abs(whole - halves) <= std::max(tol, 1e-15 * std::abs(halves)) || depth >= 24) {
        if (depth >= 24)
            throw std::runtime_error("transfer integral: quadrature did not converge");
        return halves;
    }
    return adaptive_gauss(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive_gauss(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

Cplx rho_transfer_integral(const VariationFamily& fam, const ContinuationTrace& trace) {
    const auto& samples = trace.samples;
    if (samples.size() < 2)
        return Cplx(1.0);

    const double total = trace.path.length();
    Cplx integral(0.0);
    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        const TraceSample& a = samples[i];
        const TraceSample& b = samples[i + 1];
        const double dt = b.t - a.t;
        if (dt <= 0.0)
            continue;

        // slopes d zeta / dt at the interval ends for the Hermite seed
        Cplx pa, va, pb, vb;
        trace.path.eval(a.t, pa, va);
        trace.path.eval(b.t, pb, vb);
        const Cplx ma = a.zeta_prime * va;
        const Cplx mb = b.zeta_prime * vb;

        auto integrand = [&](double t) -> Cplx {
            const double s = (t - a.t) / dt;
            const double s2 = s * s, s3 = s2 * s;
            Cplx guess = (2 * s3 - 3 * s2 + 1) * a.zeta + (s3 - 2 * s2 + s) * dt * ma +
                         (-2 * s3 + 3 * s2) * b.zeta + (s3 - s2) * dt * mb;
            Cplx u, vel;
            trace.path.eval(t, u, vel);
            if (!newton_correct(fam, u, guess, 1e-13, 12))
                throw std::runtime_error("transfer integral: node correction failed");
            if (std::abs(u) < kPoleClearance || std::abs(guess - u) < kPoleClearance)
                throw std::runtime_error("transfer integral: integrand pole too close to the path");
            return guess / ((guess - u) * u) * vel;
        };

        // tracker grid refined x4, each piece integrated adaptively
        const double tol_piece = kIntegralTarget * (dt / total) / 4.0;
        for (int piece = 0; piece < 4; ++piece) {
            const double lo = a.t + dt * piece / 4.0;
            const double hi = a.t + dt * (piece + 1) / 4.0;
            integral += adaptive_gauss(integrand, lo, hi, tol_piece, 0);
        }
    }
    return samples.front().zeta / samples.back().zeta * std::exp(-integral);
}

double rho_identity_check(const VariationFamily& fam, const ContinuationTrace& trace) {
    const TraceSample& last = trace.samples.back();
    const Polynomial p_end = polynomial_at(fam, last.u);
    const double rho_direct = rho_at(p_end, last.zeta);
    return std::abs(rho_direct - fam.rho_anchor * std::abs(trace.f_closed));
}

ContinuationTrace continue_critical_point(const VariationFamily& fam,
                                          const PathSpec& path) {
    if (std::abs(path.start() - fam.base_u) > 1e-9 * (1.0 + std::abs(fam.base_u)))
        throw std::invalid_argument("continuation: path must start at base_u");
    const double clearance = branch_clearance_of(fam, path);
    if (clearance < kBranchClearance)
        throw std::invalid_argument("continuation: path too close to a branch projection");

    ContinuationTrace trace;
    trace.path = path;
    trace.min_branch_distance = clearance;
    trace.samples = track(fam, path, fam.anchor_zeta);
    trace.step_count = static_cast<int>(trace.samples.size()) - 1;

    const TraceSample& last = trace.samples.back();
    trace.f_closed = rho_transfer_closed(fam, last.u, last.zeta);
    trace.f_integral = rho_transfer_integral(fam, trace);
    trace.g_value = normalized_critical_value(fam, last.u, last.zeta);

    const Polynomial p_end = polynomial_at(fam, last.u);
    trace.rho_endpoint = std::abs(p_end(last.zeta)) /
                         (std::abs(last.zeta) * std::abs(p_end.coefficient(1)));

    if (!(std::abs(trace.f_closed - trace.f_integral) <
          1e-6 * (1.0 + std::abs(trace.f_closed))))
        throw std::runtime_error("continuation: transfer-factor routes disagree");
    return trace;
}

// ---------------------------------------------------------------------------
// Monodromy and sheets at infinity
// ---------------------------------------------------------------------------

std::vector<int> monodromy(const VariationFamily& fam, const PathSpec& loop) {
    if (!loop.is_closed())
        throw std::invalid_argument("monodromy: loop is not closed");
    if (branch_clearance_of(fam, loop) < kBranchClearance)
        throw std::invalid_argument("monodromy: loop too close to a branch projection");

    const std::vector<Cplx> start_fiber = fiber(fam, loop.start());
    const double sep = min_pairwise_distance(start_fiber);
    std::vector<int> perm(start_fiber.size(), -1);
    std::vector<bool> taken(start_fiber.size(), false);
    for (size_t i = 0; i < start_fiber.size(); ++i) {
        const std::vector<TraceSample> run = track(fam, loop, start_fiber[i]);
        const Cplx arrival = run.back().zeta;
        size_t best = 0;
        double best_dist = std::numeric_limits<double>::max();
        for (size_t j = 0; j < start_fiber.size(); ++j) {
            const double d = std::abs(arrival - start_fiber[j]);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        if (best_dist > 0.25 * sep && start_fiber.size() > 1)
            throw std::runtime_error("monodromy: endpoint does not match any fiber point");
        if (taken[best])
            throw std::runtime_error("monodromy: matching is not a bijection");
        taken[best] = true;
        perm[i] = static_cast<int>(best);
    }
    return perm;
}

std::vector<SheetInfo> classify_sheets_at_infinity(const VariationFamily& fam) {
    constexpr double kFarRadius = 1e4;
    const Cplx direction = fam.base_u / std::abs(fam.base_u);
    const PathSpec ray = PathSpec::polyline({fam.base_u, direction * kFarRadius});
    if (branch_clearance_of(fam, ray) < kBranchClearance)
        throw std::invalid_argument("classify_sheets: outward ray passes a branch projection");

    std::vector<Cplx> xis;
    if (fam.dq.degree() >= 1) {
        RootFindReport report = all_roots(fam.dq);
        if (!report.converged)
            throw std::runtime_error("classify_sheets: critical points of q did not converge");
        xis = report.roots;
        std::sort(xis.begin(), xis.end(), lex_less);
    }

    const std::vector<Cplx> start_fiber = fiber(fam, fam.base_u);
    std::vector<SheetInfo> sheets(start_fiber.size());
    std::vector<bool> claimed(xis.size(), false);
    int pole_count = 0;

    for (size_t i = 0; i < start_fiber.size(); ++i) {
        const std::vector<TraceSample> run = track(fam, ray, start_fiber[i]);
        const TraceSample& far = run.back();
        SheetInfo& sheet = sheets[i];
        sheet.zeta_start = start_fiber[i];
        if (std::abs(far.zeta) > 100.0) {
            sheet.kind = SheetInfo::Kind::pole_sheet;
            sheet.u_over_zeta_limit = std::abs(far.u / far.zeta);
            ++pole_count;
            // growth diagnostic: |f| ~ |u|^(n-2) between |u| = 1e3 and 1e4
            const TraceSample* mid = nullptr;
            for (const TraceSample& s : run)
                if (std::abs(s.u) >= 1e3) { mid = &s; break; }
            if (mid && std::abs(far.u) > std::abs(mid->u) * 1.5) {
                const double f_mid = std::abs(rho_transfer_closed(fam, mid->u, mid->zeta));
                const double f_far = std::abs(rho_transfer_closed(fam, far.u, far.zeta));
                sheet.pole_order_estimate =
                    std::log(f_far / f_mid) / std::log(std::abs(far.u) / std::abs(mid->u));
            }
        } else {
            sheet.kind = SheetInfo::Kind::finite_sheet;
            size_t best = 0;
            double best_dist = std::numeric_limits<double>::max();
            for (size_t k = 0; k < xis.size(); ++k) {
                const double d = std::abs(far.zeta - xis[k]);
                if (d < best_dist) {
                    best_dist = d;
                    best = k;
                }
            }
            if (xis.empty() || best_dist > 0.1 * (1.0 + std::abs(far.zeta)))
                throw std::runtime_error("classify_sheets: sheet limit matches no critical point of q");
            if (claimed[best])
                throw std::runtime_error("classify_sheets: two sheets converge to the same limit");
            claimed[best] = true;
            sheet.xi = xis[best];
            sheet.c = fam.prefactor * fam.q(xis[best]) / xis[best];
        }
    }
    if (pole_count != 1)
        throw std::runtime_error("classify_sheets: expected exactly one pole sheet");
    return sheets;
}

}  // namespace smalelab
