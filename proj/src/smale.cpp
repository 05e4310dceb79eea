#include "smalelab/smale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smalelab/rootfind.hpp"

namespace smalelab {

namespace {

constexpr double kEssentialTieTol = 1e-9;
constexpr double kSimpleTol = 1e-9;

void require_base_point(const Polynomial& p) {
    const double scale = p.coefficient_scale();
    if (std::abs(p.coefficient(0)) > 1e-12 * scale)
        throw std::invalid_argument("rho: p(0) != 0");
    if (std::abs(p.coefficient(1)) <= 1e-12 * scale)
        throw std::invalid_argument("rho: p'(0) == 0");
}

}  // namespace

double rho_at(const Polynomial& p, Cplx zeta) {
    require_base_point(p);
    if (zeta == Cplx(0.0))
        throw std::invalid_argument("rho_at: zeta == 0");
    Polynomial dp = derivative(p);
    const double crit_tol = 1e-9 * (1.0 + dp.coefficient_scale());
    if (!(std::abs(dp(zeta)) < crit_tol))
        throw std::invalid_argument("rho_at: zeta is not a critical point");
    return std::abs(p(zeta)) / (std::abs(zeta) * std::abs(p.coefficient(1)));
}

ClassCheck is_in_class(const Polynomial& p) {
    ClassCheck check{};
    check.monic = std::abs(p.leading() - Cplx(1.0)) <= 1e-12;
    const double scale = p.coefficient_scale();
    check.vanishes_at_origin = std::abs(p.coefficient(0)) <= 1e-12 * scale;
    check.linear_term_nonzero = std::abs(p.coefficient(1)) > 1e-12;

    check.critical_values_nonzero = true;
    if (p.degree() >= 2 && check.linear_term_nonzero) {
        RootFindReport crit = critical_points(p);
        for (const Cplx& zeta : crit.roots) {
            if (std::abs(p(zeta)) <= 1e-10) {
                check.critical_values_nonzero = false;
                break;
            }
        }
    }

    std::string why;
    auto add = [&why](const char* clause) {
        if (!why.empty()) why += "; ";
        why += clause;
    };
    if (p.degree() < 2) add("degree < 2");
    if (!check.monic) add("not monic");
    if (!check.vanishes_at_origin) add("p(0) != 0");
    if (!check.linear_term_nonzero) add("p'(0) == 0");
    if (!check.critical_values_nonzero) add("p vanishes at a critical point");
    check.diagnostic = why;
    check.in_class = why.empty();
    return check;
}

RhoReport rho(const Polynomial& p) {
    if (p.degree() < 2)
        throw std::invalid_argument("rho: degree must be >= 2");
    require_base_point(p);

    RhoReport report{};

    Polynomial q = p;
    if (std::abs(p.leading() - Cplx(1.0)) > 1e-12) {
        std::vector<Cplx> c = p.coefficients();
        const Cplx lead = c.back();
        for (Cplx& x : c)
            x /= lead;
        q = Polynomial(std::move(c));
        report.diagnostic = "normalized non-monic input; ";
    }

    ClassCheck check = is_in_class(q);
    report.in_class = check.in_class;
    report.diagnostic += check.diagnostic;

    const Cplx p1 = q.coefficient(1);
    Polynomial dq = derivative(q);
    Polynomial ddq = derivative(dq);
    RootFindReport crit = critical_points(q);
    if (!crit.converged)
        throw std::runtime_error("rho: critical-point solve did not converge");

    double best = std::numeric_limits<double>::infinity();
    for (const Cplx& zeta : crit.roots) {
        CriticalPointRecord rec{};
        rec.zeta = zeta;
        rec.derivative_residual = std::abs(dq(zeta));
        rec.rho = std::abs(q(zeta)) / (std::abs(zeta) * std::abs(p1));
        rec.second_derivative = ddq(zeta);
        rec.essential = false;
        report.records.push_back(rec);
        best = std::min(best, rec.rho);
    }
    report.rho = best;

    report.simple = true;
    for (size_t i = 0; i < report.records.size(); ++i) {
        CriticalPointRecord& rec = report.records[i];
        if (rec.rho - best <= kEssentialTieTol * (1.0 + best)) {
            rec.essential = true;
            report.essential_indices.push_back(static_cast<int>(i));
            if (std::abs(rec.second_derivative) <= kSimpleTol)
                report.simple = false;
        }
    }

    const double n = static_cast<double>(q.degree());
    report.margin = (n - 1.0) / n - report.rho;
    return report;
}

double smale_quotient(const Polynomial& p, Cplx z0) {
    Polynomial dp = derivative(p);
    if (std::abs(dp(z0)) <= 1e-12 * (1.0 + dp.coefficient_scale()))
        throw std::invalid_argument("smale_quotient: p'(z0) == 0");
    RhoReport report = rho(translate_to_origin(p, z0));
    if (!(report.rho < 4.0))
        throw std::logic_error("smale_quotient: value >= 4 contradicts the classical bound");
    return report.rho;
}

}  // namespace smalelab
