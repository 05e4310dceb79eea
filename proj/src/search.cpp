#include "smalelab/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "smalelab/parallel.hpp"
#include "smalelab/rng.hpp"
#include "smalelab/rootfind.hpp"

namespace smalelab {

namespace {

// rho of z * prod (z - z_j) for the given nonzero roots; 0 for anything that
// falls out of class (the natural continuous extension).
double rho_objective(const std::vector<Cplx>& roots, long& evaluations) {
    ++evaluations;
    RootConfiguration cfg;
    cfg.roots = roots;
    cfg.includes_origin = true;
    const Polynomial p = from_roots(cfg, Cplx(1.0));
    const double p1 = std::abs(p.coefficient(1));
    if (p1 <= 1e-12)
        return 0.0;
    RootFindReport crit;
    try {
        crit = critical_points(p);
    } catch (const std::exception&) {
        return 0.0;
    }
    if (!crit.converged)
        return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const Cplx& zeta : crit.roots) {
        const double m = std::abs(zeta);
        if (m <= 1e-12)
            return 0.0;
        best = std::min(best, std::abs(p(zeta)) / (m * p1));
    }
    return best;
}

struct StartOutcome {
    double value = -1.0;
    std::vector<double> params;
    long evaluations = 0;
};

// Nelder-Mead maximization (reflect 1, expand 2, contract 0.5, shrink 0.5),
// stopping when the simplex diameter falls below tol.
StartOutcome nelder_mead(std::vector<double> x0, double initial_spread,
                         const std::function<double(const std::vector<double>&, long&)>& f,
                         int max_iterations, double tol) {
    const size_t dim = x0.size();
    StartOutcome out;

    std::vector<std::vector<double>> simplex(dim + 1, x0);
    for (size_t i = 0; i < dim; ++i)
        simplex[i + 1][i] += initial_spread;
    std::vector<double> values(dim + 1);
    for (size_t i = 0; i <= dim; ++i)
        values[i] = f(simplex[i], out.evaluations);

    auto diameter = [&]() {
        double d = 0.0;
        for (size_t i = 1; i <= dim; ++i)
            for (size_t k = 0; k < dim; ++k)
                d = std::max(d, std::abs(simplex[i][k] - simplex[0][k]));
        return d;
    };

    for (int it = 0; it < max_iterations; ++it) {
        // order: index 0 best (largest value), index dim worst
        std::vector<size_t> order(dim + 1);
        for (size_t i = 0; i <= dim; ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return values[a] > values[b]; });
        std::vector<std::vector<double>> sorted_simplex(dim + 1);
        std::vector<double> sorted_values(dim + 1);
        for (size_t i = 0; i <= dim; ++i) {
            sorted_simplex[i] = simplex[order[i]];
            sorted_values[i] = values[order[i]];
        }
        simplex = std::move(sorted_simplex);
        values = std::move(sorted_values);

        if (diameter() < tol)
            break;

        std::vector<double> centroid(dim, 0.0);
        for (size_t i = 0; i < dim; ++i)
            for (size_t k = 0; k < dim; ++k)
                centroid[k] += simplex[i][k] / static_cast<double>(dim);

        auto blend = [&](double coef) {
            std::vector<double> pt(dim);
            for (size_t k = 0; k < dim; ++k)
                pt[k] = centroid[k] + coef * (simplex[dim][k] - centroid[k]);
            return pt;
        };

        const std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected, out.evaluations);
        if (fr > values[0]) {
            const std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded, out.evaluations);
            if (fe > fr) {
                simplex[dim] = expanded;
                values[dim] = fe;
            } else {
                simplex[dim] = reflected;
                values[dim] = fr;
            }
            continue;
        }
        if (fr > values[dim - 1]) {
            simplex[dim] = reflected;
            values[dim] = fr;
            continue;
        }
        const std::vector<double> contracted = blend(0.5);
        const double fc = f(contracted, out.evaluations);
        if (fc > values[dim]) {
            simplex[dim] = contracted;
            values[dim] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (size_t i = 1; i <= dim; ++i) {
            for (size_t k = 0; k < dim; ++k)
                simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
            values[i] = f(simplex[i], out.evaluations);
        }
    }

    size_t best = 0;
    for (size_t i = 1; i <= dim; ++i)
        if (values[i] > values[best])
            best = i;
    out.value = values[best];
    out.params = simplex[best];
    return out;
}

std::vector<Cplx> roots_from_params(const std::vector<double>& params, bool circle_only) {
    std::vector<Cplx> roots;
    if (circle_only) {
        roots.reserve(params.size());
        for (double th : params)
            roots.emplace_back(std::cos(th), std::sin(th));
    } else {
        roots.reserve(params.size() / 2);
        for (size_t k = 0; k + 1 < params.size(); k += 2)
            roots.emplace_back(params[k], params[k + 1]);
    }
    return roots;
}

SearchResult run_search(const SearchConfig& config) {
    if (config.degree < 2)
        throw std::invalid_argument("search: degree must be >= 2");
    if (config.starts < 1)
        throw std::invalid_argument("search: need at least one start");

    const int n = config.degree;
    const size_t free_roots = static_cast<size_t>(n - 1);
    const size_t dim = config.circle_only ? free_roots : 2 * free_roots;

    auto objective = [&](const std::vector<double>& params, long& evals) {
        return rho_objective(roots_from_params(params, config.circle_only), evals);
    };

    std::vector<StartOutcome> outcomes(static_cast<size_t>(config.starts));
    parallel_for(static_cast<size_t>(config.starts), [&](size_t s) {
        SplitMix64 rng = derive_stream(config.seed, s);
        std::vector<double> x0(dim);
        if (s == 0) {
            // the equality configuration (roots of z^(n-1) = 1), 10% perturbed
            for (size_t j = 0; j < free_roots; ++j) {
                const double th = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(free_roots);
                if (config.circle_only) {
                    x0[j] = th + 0.1 * rng.uniform(-1.0, 1.0);
                } else {
                    const Cplx z = Cplx(std::cos(th), std::sin(th)) *
                                   (1.0 + 0.1 * rng.uniform(-1.0, 1.0));
                    x0[2 * j] = z.real();
                    x0[2 * j + 1] = z.imag();
                }
            }
        } else {
            for (size_t j = 0; j < free_roots; ++j) {
                if (config.circle_only) {
                    x0[j] = rng.uniform(0.0, 2.0 * std::numbers::pi);
                } else {
                    const Cplx z = rng.uniform_disk(1.5);
                    x0[2 * j] = z.real();
                    x0[2 * j + 1] = z.imag();
                }
            }
        }
        outcomes[s] = nelder_mead(std::move(x0), config.circle_only ? 0.3 : 0.25,
                                  objective, config.max_iterations,
                                  config.simplex_tolerance);
    }, config.workers);

    // index-ordered reduction: best value, lowest start index on ties
    size_t winner = 0;
    long evaluations = 0;
    for (size_t s = 0; s < outcomes.size(); ++s) {
        evaluations += outcomes[s].evaluations;
        if (outcomes[s].value > outcomes[winner].value)
            winner = s;
    }

    SearchResult result;
    result.best_roots = roots_from_params(outcomes[winner].params, config.circle_only);
    long dummy = 0;
    result.best_rho = rho_objective(result.best_roots, dummy);
    result.objective_evaluations = evaluations;
    RootConfiguration cfg;
    cfg.roots = result.best_roots;
    cfg.includes_origin = true;
    result.extremal_form = is_extremal_form(from_roots(cfg, Cplx(1.0)), 1e-3);
    result.gap_to_bound = (static_cast<double>(n) - 1.0) / n - result.best_rho;
    return result;
}

}  // namespace

SearchResult maximize_rho(const SearchConfig& config) {
    if (config.circle_only)
        throw std::invalid_argument("maximize_rho: config has circle_only set");
    return run_search(config);
}

SearchResult maximize_rho_circle(const SearchConfig& config) {
    SearchConfig circle = config;
    circle.circle_only = true;
    return run_search(circle);
}

bool is_extremal_form(const Polynomial& p, double tol) {
    const double scale = p.coefficient_scale();
    if (std::abs(p.coefficient(0)) > 1e-12 * scale)
        throw std::invalid_argument("is_extremal_form: p(0) != 0");
    const int n = p.degree();
    const double ends = std::max(std::abs(p.coefficient(1)), std::abs(p.coefficient(n)));
    for (int k = 2; k < n; ++k)
        if (std::abs(p.coefficient(k)) >= tol * ends)
            return false;
    return true;
}

}  // namespace smalelab
