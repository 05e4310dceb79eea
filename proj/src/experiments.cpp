#include "smalelab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "smalelab/parallel.hpp"
#include "smalelab/rng.hpp"
#include "smalelab/rootfind.hpp"

namespace smalelab {

std::vector<Cplx> random_class_roots(int degree, uint64_t seed, uint64_t index) {
    if (degree < 2)
        throw std::invalid_argument("random_class_roots: degree must be >= 2");
    SplitMix64 rng = derive_stream(seed, (static_cast<uint64_t>(degree) << 32) ^ index);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Cplx> roots;
        roots.reserve(static_cast<size_t>(degree - 1));
        bool ok = true;
        for (int j = 0; j < degree - 1; ++j) {
            Cplx z = rng.uniform_disk(1.0);
            if (std::abs(z) < 1e-3) {
                ok = false;
                break;
            }
            roots.push_back(z);
        }
        if (!ok)
            continue;
        // reject configurations where a critical point sits on a root
        RootConfiguration cfg;
        cfg.roots = roots;
        cfg.includes_origin = true;
        const Polynomial p = from_roots(cfg, Cplx(1.0));
        RootFindReport crit = critical_points(p);
        if (!crit.converged)
            continue;
        for (const Cplx& zeta : crit.roots)
            if (std::abs(p(zeta)) <= 1e-10) {
                ok = false;
                break;
            }
        if (ok)
            return roots;
    }
    throw std::runtime_error("random_class_roots: rejection sampling failed");
}

ExperimentSummary verify_bound(int degree_min, int degree_max, int samples,
                               uint64_t seed, double tol, int workers) {
    if (degree_min < 2 || degree_max < degree_min)
        throw std::invalid_argument("verify_bound: bad degree range");
    if (samples < 1)
        throw std::invalid_argument("verify_bound: need at least one sample");

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentSummary summary;
    summary.command = "verify";
    summary.seed = seed;
    summary.sample_count = samples;
    summary.degree_min = degree_min;
    summary.degree_max = degree_max;
    summary.tol = tol;

    for (int n = degree_min; n <= degree_max; ++n) {
        DegreeSummary degree;
        degree.degree = n;
        degree.samples = samples;
        const double bound = (static_cast<double>(n) - 1.0) / n;

        std::vector<double> rhos(static_cast<size_t>(samples));
        std::vector<std::vector<Cplx>> root_sets(static_cast<size_t>(samples));
        parallel_for(static_cast<size_t>(samples), [&](size_t i) {
            root_sets[i] = random_class_roots(n, seed, i);
            RootConfiguration cfg;
            cfg.roots = root_sets[i];
            cfg.includes_origin = true;
            const Polynomial p = from_roots(cfg, Cplx(1.0));
            const double p1 = std::abs(p.coefficient(1));
            RootFindReport crit = critical_points(p);
            double best = std::numeric_limits<double>::infinity();
            for (const Cplx& zeta : crit.roots)
                best = std::min(best, std::abs(p(zeta)) / (std::abs(zeta) * p1));
            rhos[i] = best;
        }, workers);

        // index-ordered reduction keeps the summary bit-identical
        degree.rho_min = std::numeric_limits<double>::infinity();
        degree.rho_max = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (size_t i = 0; i < rhos.size(); ++i) {
            const double r = rhos[i];
            degree.rho_min = std::min(degree.rho_min, r);
            degree.rho_max = std::max(degree.rho_max, r);
            sum += bound - r;
            if (!(r < 4.0))
                degree.smale_bound_ok = false;
            if (r > bound + tol)
                degree.violations.push_back(root_sets[i]);
        }
        degree.margin_min = bound - degree.rho_max;
        degree.margin_max = bound - degree.rho_min;
        degree.margin_mean = sum / static_cast<double>(samples);
        summary.degrees.push_back(std::move(degree));
    }

    summary.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

std::string summary_fingerprint(const ExperimentSummary& summary) {
    char buf[512];
    std::string out = summary.command + " seed=" + std::to_string(summary.seed) +
                      " samples=" + std::to_string(summary.sample_count) + "\n";
    for (const DegreeSummary& d : summary.degrees) {
        std::snprintf(buf, sizeof buf,
                      "n=%d rho_min=%.17g rho_max=%.17g margin_min=%.17g "
                      "margin_max=%.17g margin_mean=%.17g smale_ok=%d violations=%zu\n",
                      d.degree, d.rho_min, d.rho_max, d.margin_min, d.margin_max,
                      d.margin_mean, d.smale_bound_ok ? 1 : 0, d.violations.size());
        out += buf;
    }
    return out;
}

}  // namespace smalelab
