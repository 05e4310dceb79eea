#include "smalelab/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smalelab {

namespace {

// Evaluate p and p' together (Horner).
void eval_both(const std::vector<Cplx>& c, Cplx z, Cplx& p, Cplx& dp) {
    p = c.back();
    dp = Cplx(0.0);
    for (size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
}

double cauchy_radius(const std::vector<Cplx>& c) {
    const double lead = std::abs(c.back());
    double m = 0.0;
    for (size_t k = 0; k + 1 < c.size(); ++k)
        m = std::max(m, std::abs(c[k]));
    return 1.0 + m / lead;
}

// One Aberth-Ehrlich pass over all points (Gauss-Seidel order).
// Returns the largest relative correction.
double aberth_sweep(const std::vector<Cplx>& c, std::vector<Cplx>& z) {
    const size_t n = z.size();
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
        Cplx p, dp;
        eval_both(c, z[i], p, dp);
        if (p == Cplx(0.0))
            continue;
        Cplx ratio = (dp == Cplx(0.0)) ? Cplx(0.0) : p / dp;
        Cplx defl(0.0);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Cplx d = z[i] - z[j];
            if (d == Cplx(0.0))
                d = Cplx(1e-14, 1e-14);
            defl += 1.0 / d;
        }
        Cplx denom = 1.0 - ratio * defl;
        Cplx step = (denom == Cplx(0.0) || ratio == Cplx(0.0)) ? ratio : ratio / denom;
        if (dp == Cplx(0.0)) {
            // flat spot: nudge off it
            step = Cplx(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
        }
        z[i] -= step;
        worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    return worst;
}

void newton_polish(const std::vector<Cplx>& c, Cplx& z) {
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 30; ++it) {
        Cplx p, dp;
        eval_both(c, z, p, dp);
        if (dp == Cplx(0.0))
            return;
        Cplx step = p / dp;
        double m = std::abs(step);
        if (m >= prev)  // stalled (multiple root); keep the better iterate
            return;
        z -= step;
        prev = m;
        if (m < 1e-14 * (1.0 + std::abs(z)))
            return;
    }
}

}  // namespace

RootFindReport all_roots(const Polynomial& p) {
    if (p.is_zero())
        throw std::invalid_argument("all_roots: zero polynomial");
    if (p.degree() < 1)
        throw std::invalid_argument("all_roots: degree must be >= 1");

    const double coeff_scale = p.coefficient_scale();

    // deflate exact roots at the origin
    std::vector<Cplx> c = p.coefficients();
    size_t origin_mult = 0;
    while (origin_mult + 1 < c.size() && c[origin_mult] == Cplx(0.0))
        ++origin_mult;
    c.erase(c.begin(), c.begin() + static_cast<long>(origin_mult));

    RootFindReport report;
    report.roots.assign(origin_mult, Cplx(0.0));
    report.residuals.assign(origin_mult, 0.0);

    const size_t n = c.size() - 1;
    if (n >= 1) {
        // scale coefficients for conditioning; roots are unchanged
        std::vector<Cplx> cs = c;
        double m = 0.0;
        for (const Cplx& x : cs)
            m = std::max(m, std::abs(x));
        for (Cplx& x : cs)
            x /= m;

        std::vector<Cplx> z(n);
        auto place_initial = [&](double radius_factor, double phase) {
            const double R = cauchy_radius(cs) * radius_factor;
            for (size_t i = 0; i < n; ++i) {
                double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n) + phase;
                z[i] = Cplx(R * std::cos(th), R * std::sin(th));
            }
        };

        int sweeps = 0;
        bool ok = false;
        for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
            place_initial(attempt == 0 ? 1.0 : 1.25, attempt == 0 ? 0.4 : 1.1);
            for (int it = 0; it < 200; ++it) {
                ++sweeps;
                double worst = aberth_sweep(cs, z);
                if (worst < 1e-13) {
                    ok = true;
                    break;
                }
            }
        }
        report.iterations = sweeps;

        if (n == 1)
            z[0] = -cs[0] / cs[1];
        for (Cplx& zi : z)
            newton_polish(cs, zi);

        report.roots.insert(report.roots.end(), z.begin(), z.end());
        for (const Cplx& zi : z)
            report.residuals.push_back(std::abs(p(zi)));
    }

    report.converged = true;
    const double tol = 1e-10 * (1.0 + coeff_scale);
    for (double r : report.residuals)
        if (!(r < tol))
            report.converged = false;
    return report;
}

RootFindReport critical_points(const Polynomial& p) {
    if (p.degree() < 2)
        throw std::invalid_argument("critical_points: degree must be >= 2");
    return all_roots(derivative(p));
}

std::vector<RootCluster> cluster_multiplicities(const RootFindReport& report, double tol) {
    const size_t n = report.roots.size();
    std::vector<bool> used(n, false);
    std::vector<RootCluster> clusters;
    for (size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        // breadth-first gather of everything chained within tol
        std::vector<size_t> members{i};
        used[i] = true;
        for (size_t k = 0; k < members.size(); ++k) {
            for (size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                if (std::abs(report.roots[members[k]] - report.roots[j]) <= tol) {
                    used[j] = true;
                    members.push_back(j);
                }
            }
        }
        Cplx sum(0.0);
        for (size_t m : members)
            sum += report.roots[m];
        clusters.push_back({sum / static_cast<double>(members.size()),
                            static_cast<int>(members.size())});
    }
    return clusters;
}

}  // namespace smalelab
