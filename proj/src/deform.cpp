#include "smalelab/deform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "smalelab/parallel.hpp"
#include "smalelab/rootfind.hpp"
#include "smalelab/smale.hpp"

namespace smalelab {

namespace {

constexpr double kCertificateSlack = 1e-9;
constexpr double kInteriorMargin = 1e-9;

bool lex_less(Cplx a, Cplx b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

std::vector<Cplx> sorted_nonzero_roots(const Polynomial& p) {
    RootFindReport report = all_roots(p);
    if (!report.converged)
        throw std::runtime_error("deform: root finding did not converge");
    std::vector<Cplx> roots;
    for (const Cplx& z : report.roots)
        if (std::abs(z) > 1e-12)
            roots.push_back(z);
    std::sort(roots.begin(), roots.end(), lex_less);
    return roots;
}

// rho(Q(., u)) for the fixed factor given by `others` (always includes the
// origin), by fresh root-finding of Q'(., u). Returns -1 when Q(., u) falls
// out of class (collision with a fixed root).
double rho_of_candidate(const std::vector<Cplx>& others, Cplx u) {
    RootConfiguration cfg;
    cfg.roots = others;
    cfg.roots.push_back(u);
    cfg.includes_origin = true;
    const Polynomial cand = from_roots(cfg, Cplx(1.0));
    RootFindReport crit = critical_points(cand);
    if (!crit.converged)
        return -1.0;
    const double p1 = std::abs(cand.coefficient(1));
    if (p1 <= 1e-12)
        return -1.0;
    double best = std::numeric_limits<double>::infinity();
    for (const Cplx& zeta : crit.roots) {
        if (std::abs(cand(zeta)) <= 1e-10)
            return -1.0;  // critical point collides with a root
        best = std::min(best, std::abs(cand(zeta)) / (std::abs(zeta) * p1));
    }
    return best;
}

}  // namespace

DeformationStep push_zero_to_circle(const Polynomial& p, int moving_root_index,
                                    int samples) {
    if (samples < 8)
        throw std::invalid_argument("push_zero_to_circle: too few boundary samples");
    ClassCheck check = is_in_class(p);
    if (!check.in_class)
        throw std::invalid_argument("push_zero_to_circle: polynomial not in class (" +
                                    check.diagnostic + ")");

    std::vector<Cplx> roots = sorted_nonzero_roots(p);
    if (moving_root_index < 0 || moving_root_index >= static_cast<int>(roots.size()))
        throw std::invalid_argument("push_zero_to_circle: root index out of range");
    const Cplx moving = roots[static_cast<size_t>(moving_root_index)];
    if (!(std::abs(moving) < 1.0 - kInteriorMargin))
        throw std::invalid_argument("push_zero_to_circle: chosen root is not interior");

    std::vector<Cplx> others;
    for (int i = 0; i < static_cast<int>(roots.size()); ++i)
        if (i != moving_root_index)
            others.push_back(roots[static_cast<size_t>(i)]);

    DeformationStep step;
    step.before = p;
    step.moved_root_from = moving;
    step.boundary_samples = samples;
    step.rho_before = rho(p).rho;

    // dense sweep of the circle, boundary samples evaluated in parallel with
    // an index-ordered reduction
    std::vector<double> values(static_cast<size_t>(samples));
    const double dtheta = 2.0 * std::numbers::pi / samples;
    parallel_for(static_cast<size_t>(samples), [&](size_t k) {
        const double th = dtheta * static_cast<double>(k);
        values[k] = rho_of_candidate(others, Cplx(std::cos(th), std::sin(th)));
    });
    int skipped = 0;
    int best_index = -1;
    double best_value = -1.0;
    for (int k = 0; k < samples; ++k) {
        const double v = values[static_cast<size_t>(k)];
        if (v < 0.0) {
            ++skipped;
            continue;
        }
        if (v > best_value) {
            best_value = v;
            best_index = k;
        }
    }
    if (best_index < 0)
        throw std::runtime_error("push_zero_to_circle: every boundary sample fell out of class");
    if (skipped > 0)
        step.diagnostic = std::to_string(skipped) + " boundary sample(s) out of class, skipped";

    // golden-section refinement of the best angle to 1e-10
    auto value_at = [&others](double th) {
        const double v = rho_of_candidate(others, Cplx(std::cos(th), std::sin(th)));
        return v < 0.0 ? -1.0 : v;
    };
    double a = dtheta * (best_index - 1);
    double b = dtheta * (best_index + 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = value_at(x1), f2 = value_at(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = value_at(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = value_at(x1);
        }
    }
    double theta = 0.5 * (a + b);
    // ties among equally good angles resolve to the smallest in [0, 2pi)
    theta = std::fmod(theta, 2.0 * std::numbers::pi);
    if (theta < 0.0)
        theta += 2.0 * std::numbers::pi;

    step.moved_root_to = Cplx(std::cos(theta), std::sin(theta));
    RootConfiguration cfg;
    cfg.roots = others;
    cfg.roots.push_back(step.moved_root_to);
    cfg.includes_origin = true;
    step.after = from_roots(cfg, Cplx(1.0));
    step.rho_after = rho(step.after).rho;
    step.certificate_ok = step.rho_after >= step.rho_before - kCertificateSlack;
    return step;
}

SaturationReport circle_saturate(const Polynomial& p, int samples) {
    SaturationReport report;
    Polynomial current = normalize_to_class(p).poly;
    const int max_steps = current.degree() - 1;

    for (int iteration = 0; iteration <= max_steps; ++iteration) {
        std::vector<Cplx> roots = sorted_nonzero_roots(current);
        int interior = -1;
        double smallest = std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
            const double m = std::abs(roots[static_cast<size_t>(i)]);
            if (m < 1.0 - kInteriorMargin && m < smallest) {
                smallest = m;
                interior = i;
            }
        }
        if (interior < 0)
            break;
        if (iteration == max_steps)
            throw std::runtime_error("circle_saturate: interior roots remain after n-1 steps");

        DeformationStep step = push_zero_to_circle(current, interior, samples);
        current = step.after;
        report.rho_trajectory.push_back(step.rho_before);
        report.steps.push_back(std::move(step));
    }

    report.final = current;
    report.rho_trajectory.push_back(rho(current).rho);
    report.all_on_circle = true;
    for (const Cplx& z : sorted_nonzero_roots(current))
        if (std::abs(std::abs(z) - 1.0) > 1e-9)
            report.all_on_circle = false;
    return report;
}

std::vector<BlowupProbeRow> blowup_probe(const VariationFamily& fam, double r,
                                         int boundary_samples) {
    if (!(r >= 1.0))
        throw std::invalid_argument("blowup_probe: r must be >= 1");
    if (boundary_samples < 1)
        throw std::invalid_argument("blowup_probe: need at least one sample");

    // limits of the transfer factor on the finite sheets
    std::vector<Cplx> xis;
    std::vector<Cplx> limits;
    if (fam.dq.degree() >= 1) {
        RootFindReport report = all_roots(fam.dq);
        if (!report.converged)
            throw std::runtime_error("blowup_probe: critical points of q did not converge");
        xis = report.roots;
        for (const Cplx& xi : xis)
            limits.push_back(fam.prefactor * fam.q(xi) / xi);
    }

    std::vector<BlowupProbeRow> table(static_cast<size_t>(boundary_samples));
    parallel_for(static_cast<size_t>(boundary_samples), [&](size_t k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / boundary_samples;
        const Cplx u0 = r * Cplx(std::cos(th), std::sin(th));
        BlowupProbeRow row;
        row.u0 = u0;
        const std::vector<Cplx> pts = fiber(fam, u0);
        // the pole sheet is the fiber point of largest modulus
        size_t pole = 0;
        for (size_t i = 1; i < pts.size(); ++i)
            if (std::abs(pts[i]) > std::abs(pts[pole]))
                pole = i;
        const Polynomial cand = polynomial_at(fam, u0);
        const double p1 = std::abs(cand.coefficient(1));
        double rho_min = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < pts.size(); ++i) {
            SheetProbeValue probe;
            probe.zeta = pts[i];
            probe.f = rho_transfer_closed(fam, u0, pts[i]);
            probe.is_pole_sheet = (i == pole);
            if (probe.is_pole_sheet) {
                probe.flag_ok = std::abs(probe.f) > 1.0;
            } else {
                size_t best = 0;
                double best_dist = std::numeric_limits<double>::max();
                for (size_t j = 0; j < xis.size(); ++j) {
                    const double d = std::abs(pts[i] - xis[j]);
                    if (d < best_dist) {
                        best_dist = d;
                        best = j;
                    }
                }
                probe.flag_ok = !xis.empty() && std::abs(probe.f) > 0.5 * std::abs(limits[best]);
            }
            rho_min = std::min(rho_min, std::abs(cand(pts[i])) / (std::abs(pts[i]) * p1));
            row.sheets.push_back(probe);
        }
        row.rho = rho_min;
        table[k] = std::move(row);
    });
    return table;
}

}  // namespace smalelab
