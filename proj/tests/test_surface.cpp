#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "smalelab/rng.hpp"
#include "smalelab/rootfind.hpp"
#include "smalelab/smale.hpp"
#include "smalelab/surface.hpp"

#include "oracles.hpp"

using namespace smalelab;

namespace {

const Polynomial kCube({{0, 0}, {-1, 0}, {0, 0}, {1, 0}});  // z^3 - z
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
const Cplx kBranchUpper(0.5, 0.5 * kInvSqrt3);                     // 1/2 + i/(2 sqrt 3)
const Cplx kProjUpper(0.5, 0.5 * std::sqrt(3.0));                  // e^{i pi/3}
const Cplx kZetaAtMinus2((-1.0 - std::sqrt(7.0)) / 3.0, 0.0);

// family of z^3 - z with moving root -1; anchor 0 = -1/sqrt3, 1 = +1/sqrt3
VariationFamily cube_family(int anchor_index = 0) {
    return build_family(kCube, 0, anchor_index);
}

// n-2 fixed roots and a base root, separated, inside the unit disk; class
// membership is re-checked and bad draws rejected
VariationFamily random_family(uint64_t seed, uint64_t index, int n, int anchor_index = 0) {
    for (uint64_t attempt = 0;; ++attempt) {
        SplitMix64 rng = derive_stream(seed, index * 977 + attempt);
        std::vector<Cplx> roots;
        bool ok = true;
        for (int i = 0; i < n - 1 && ok; ++i) {
            Cplx z;
            int tries = 0;
            for (;;) {
                z = rng.uniform_disk(0.95);
                const double m = std::abs(z);
                bool separated = m > 0.25;
                for (const Cplx& other : roots)
                    separated = separated && std::abs(z - other) > 0.15;
                if (separated)
                    break;
                if (++tries > 100) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                roots.push_back(z);
        }
        if (!ok)
            continue;
        const Polynomial p = from_roots(RootConfiguration{roots, true});
        if (!is_in_class(p).in_class)
            continue;
        try {
            return build_family(p, static_cast<int>(rng.next() % (n - 1)), anchor_index);
        } catch (const std::exception&) {
            continue;
        }
    }
}

// waypoint path from base_u staying clear of the integrand poles (origin,
// fixed roots) and of the branch projections
PathSpec random_admissible_path(const VariationFamily& fam, SplitMix64& rng,
                                bool close_the_loop = false) {
    const SurfaceAtlas atlas = branch_points(fam);
    std::vector<Cplx> avoid = atlas.branch_projections;
    avoid.push_back(Cplx(0, 0));
    for (const Cplx& z : fam.fixed_roots)
        avoid.push_back(z);
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<Cplx> waypoints{fam.base_u};
        const int extra = 2 + static_cast<int>(rng.next() % 2);
        for (int i = 0; i < extra; ++i) {
            const double radius = rng.uniform(1.2, 2.2);
            const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
            waypoints.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
        }
        if (close_the_loop)
            waypoints.push_back(fam.base_u);
        const PathSpec path = PathSpec::polyline(waypoints);
        bool clear = true;
        for (const Cplx& bad : avoid)
            clear = clear && path.distance_to(bad) > 0.05;
        if (clear)
            return path;
    }
    FAIL("no admissible path found");
    return PathSpec::polyline({fam.base_u, fam.base_u});
}

}  // namespace

TEST_CASE("build_family") {
    SUBCASE("cube with moving root -1") {
        const VariationFamily fam = cube_family(0);
        CHECK(std::abs(fam.base_u - Cplx(-1, 0)) < 1e-12);
        CHECK(std::abs(fam.anchor_zeta - Cplx(-kInvSqrt3, 0)) < 1e-10);
        CHECK(fam.q.degree() == 2);
        CHECK(std::abs(fam.q.coefficient(1) - Cplx(-1, 0)) < 1e-10);  // z^2 - z
        CHECK(std::abs(fam.q.coefficient(2) - Cplx(1, 0)) < 1e-10);
        // Q(., base_u) reproduces p
        const Polynomial back = polynomial_at(fam, fam.base_u);
        for (int k = 0; k <= 3; ++k)
            CHECK(std::abs(back.coefficient(k) - kCube.coefficient(k)) <= 1e-10);
        // the anchor satisfies the factored critical equation
        CHECK(std::abs(q_prime_of_family(fam, fam.anchor_zeta, fam.base_u)) < 1e-9);
        CHECK(std::abs(fam.prefactor - Cplx(-1.5, 0)) < 1e-9);
    }
    SUBCASE("other sheet anchor") {
        const VariationFamily fam = cube_family(1);
        CHECK(std::abs(fam.anchor_zeta - Cplx(kInvSqrt3, 0)) < 1e-10);
        CHECK(std::abs(fam.base_u - Cplx(-1, 0)) < 1e-12);
    }
    SUBCASE("z(z-1)(z-i) with moving root i") {
        const Polynomial p({{0, 0}, {0, 1}, {-1, -1}, {1, 0}});
        const VariationFamily fam = build_family(p, 0, 0);  // i sorts first
        CHECK(std::abs(fam.base_u - Cplx(0, 1)) < 1e-10);
        CHECK(std::abs(fam.q.coefficient(1) - Cplx(-1, 0)) < 1e-10);
        CHECK(std::abs(fam.q.coefficient(2) - Cplx(1, 0)) < 1e-10);
    }
    SUBCASE("multiple roots are rejected") {
        const Polynomial p({{0, 0}, {1, 0}, {-2, 0}, {1, 0}});  // z(z-1)^2
        CHECK_THROWS_AS(build_family(p, 0, 0), std::invalid_argument);
    }
}

TEST_CASE("projection") {
    const VariationFamily fam = cube_family();
    SUBCASE("closed-form value at the upper branch point") {
        // q(w) = -1/3, q'(w) = i/sqrt3, so phi(w) = e^{i pi/3}
        CHECK(std::abs(projection(fam, kBranchUpper) - kProjUpper) < 1e-12);
    }
    SUBCASE("the anchor projects to base_u") {
        CHECK(std::abs(projection(fam, fam.anchor_zeta) - fam.base_u) < 1e-9);
    }
    SUBCASE("projection inverts the critical equation") {
        SplitMix64 rng(41);
        for (int trial = 0; trial < 40; ++trial) {
            const Cplx w = rng.uniform_disk(2.0);
            Cplx u;
            try {
                u = projection(fam, w);
            } catch (const std::invalid_argument&) {
                continue;
            }
            CHECK(std::abs(q_prime_of_family(fam, w, u)) <=
                  1e-12 * (1.0 + std::abs(u)) * (1.0 + std::abs(w)));
        }
    }
    SUBCASE("large-argument ratio tends to n/(n-1)") {
        const Cplx w(1e3, 0.0);
        CHECK(std::abs(projection(fam, w) / w - Cplx(1.5, 0)) < 1e-3);
    }
    SUBCASE("pole at a critical point of q") {
        CHECK_THROWS_AS(projection(fam, Cplx(0.5, 0)), std::invalid_argument);
    }
}

TEST_CASE("branch points") {
    SUBCASE("q = z^2 - z") {
        const SurfaceAtlas atlas = branch_points(cube_family());
        REQUIRE(atlas.branch_points.size() == 2);
        CHECK(atlas.sheet_count == 2);
        double best_w = 1e300, best_p = 1e300;
        for (size_t i = 0; i < 2; ++i) {
            best_w = std::min(best_w, std::abs(atlas.branch_points[i] - kBranchUpper));
            best_p = std::min(best_p, std::abs(atlas.branch_projections[i] - kProjUpper));
        }
        CHECK(best_w < 1e-10);
        CHECK(best_p < 1e-10);
        // conjugate pair
        CHECK(std::abs(atlas.branch_points[0] - std::conj(atlas.branch_points[1])) < 1e-10);
    }
    SUBCASE("n = 4 family has 4 branch points with multiplicity") {
        const Polynomial p = from_roots(RootConfiguration{{Cplx(1, 0), Cplx(-1, 0), Cplx(0, 0.5)}, true});
        const VariationFamily fam = build_family(p, 0, 0);
        const SurfaceAtlas atlas = branch_points(fam);
        CHECK(atlas.branch_points.size() == 4);
        CHECK(atlas.sheet_count == 3);
    }
    SUBCASE("n = 2 family has none") {
        const Polynomial p({{0, 0}, {-1, 0}, {1, 0}});
        const SurfaceAtlas atlas = branch_points(build_family(p, 0, 0));
        CHECK(atlas.branch_points.empty());
        CHECK(atlas.sheet_count == 1);
    }
}

TEST_CASE("continuation along the real axis") {
    const VariationFamily fam = cube_family();
    const PathSpec path = PathSpec::polyline({Cplx(-1, 0), Cplx(-2, 0)});
    const ContinuationTrace trace = continue_critical_point(fam, path);

    // endpoint from the quadratic formula for 3z^2 - 2(1+u)z + u at u = -2
    CHECK(std::abs(trace.samples.back().zeta - kZetaAtMinus2) < 1e-9);
    CHECK(std::abs(trace.f_closed - Cplx(oracles::kTransferAtMinus2, 0)) < 1e-9);
    CHECK(std::abs(trace.f_integral - trace.f_closed) <
          1e-6 * (1.0 + std::abs(trace.f_closed)));
    CHECK(trace.rho_endpoint == doctest::Approx(oracles::kRhoAtMinus2).epsilon(1e-9));
    CHECK(std::abs(std::abs(trace.g_value) - oracles::kRhoAtMinus2) < 1e-9);
    CHECK(rho_identity_check(fam, trace) < 1e-8);
    CHECK(trace.min_branch_distance > 1.0);

    SUBCASE("every accepted sample satisfies the residual bound") {
        for (const TraceSample& s : trace.samples)
            CHECK(s.residual < 1e-10 * std::pow(1.0 + std::abs(s.u), 3.0));
    }
    SUBCASE("implicit derivative matches finite differences of the branch") {
        const double delta = 1e-5;
        const size_t count = trace.samples.size();
        REQUIRE(count > 22);
        for (size_t pick = 1; pick <= 20; ++pick) {
            const TraceSample& s = trace.samples[pick * (count - 2) / 20];
            auto solve_near = [&](Cplx u, Cplx seed) {
                Cplx w = seed;
                for (int it = 0; it < 20; ++it) {
                    const Cplx value = fam.q(w) + (w - u) * fam.dq(w);
                    const Cplx slope = 2.0 * fam.dq(w) + (w - u) * fam.ddq(w);
                    w -= value / slope;
                }
                return w;
            };
            const Cplx dir(1.0, 0.0);  // real-axis path
            const Cplx plus = solve_near(s.u + delta * dir, s.zeta);
            const Cplx minus = solve_near(s.u - delta * dir, s.zeta);
            const Cplx fd = (plus - minus) / (2.0 * delta * dir);
            CHECK(std::abs(fd - s.zeta_prime) <= 1e-5 * (1.0 + std::abs(fd)));
        }
    }
}

TEST_CASE("continuation degenerate and loop cases") {
    const VariationFamily fam = cube_family();
    SUBCASE("zero-length path") {
        const ContinuationTrace trace =
            continue_critical_point(fam, PathSpec::polyline({Cplx(-1, 0), Cplx(-1, 0)}));
        CHECK(trace.samples.size() == 1);
        CHECK(std::abs(trace.samples.back().zeta - fam.anchor_zeta) < 1e-12);
        CHECK(std::abs(trace.f_integral - Cplx(1, 0)) < 1e-12);
        CHECK(std::abs(trace.f_closed - Cplx(1, 0)) < 1e-12);
        CHECK(rho_identity_check(fam, trace) < 1e-12);
    }
    SUBCASE("transfer factor is 1 at the base on the other sheet too") {
        const VariationFamily other = cube_family(1);
        const ContinuationTrace trace =
            continue_critical_point(other, PathSpec::polyline({Cplx(-1, 0), Cplx(-1, 0)}));
        CHECK(std::abs(trace.f_closed - Cplx(1, 0)) < 1e-12);
    }
    SUBCASE("contractible small loop returns to the anchor") {
        const PathSpec loop = PathSpec::circle(Cplx(-1.05, 0), 0.05, 0.0, 1);
        const ContinuationTrace trace = continue_critical_point(fam, loop);
        CHECK(std::abs(trace.samples.back().zeta - fam.anchor_zeta) < 1e-8);
    }
    SUBCASE("retraced path cancels the integral") {
        const PathSpec there_and_back =
            PathSpec::polyline({Cplx(-1, 0), Cplx(-2, 0), Cplx(-1, 0)});
        const ContinuationTrace trace = continue_critical_point(fam, there_and_back);
        CHECK(std::abs(trace.f_integral - Cplx(1, 0)) < 1e-6);
    }
    SUBCASE("paths through a branch projection are rejected") {
        const PathSpec bad = PathSpec::polyline({Cplx(-1, 0), kProjUpper});
        CHECK_THROWS_AS(continue_critical_point(fam, bad), std::invalid_argument);
    }
    SUBCASE("paths must start at base_u") {
        const PathSpec bad = PathSpec::polyline({Cplx(-2, 0), Cplx(-3, 0)});
        CHECK_THROWS_AS(continue_critical_point(fam, bad), std::invalid_argument);
    }
}

TEST_CASE("normalized critical value") {
    const VariationFamily fam = cube_family();
    SUBCASE("modulus is rho at the anchor") {
        const Cplx g = normalized_critical_value(fam, fam.base_u, fam.anchor_zeta);
        CHECK(std::abs(g) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    }
    SUBCASE("modulus is rho after continuation") {
        const Cplx g = normalized_critical_value(fam, Cplx(-2, 0), kZetaAtMinus2);
        CHECK(std::abs(g) == doctest::Approx(oracles::kRhoAtMinus2).epsilon(1e-10));
    }
    SUBCASE("vanishes when zeta hits a fixed root") {
        CHECK(std::abs(normalized_critical_value(fam, Cplx(-1, 0), Cplx(1, 0))) == 0.0);
    }
    SUBCASE("u = 0 is rejected") {
        CHECK_THROWS_AS(normalized_critical_value(fam, Cplx(0, 0), Cplx(1, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("reversibility of continuation") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 3 + trial % 3;
        const VariationFamily fam = random_family(43, static_cast<uint64_t>(trial), n);
        PathSpec forward = random_admissible_path(fam, rng);
        PathSpec round = forward;
        round.append(forward.reversed());
        const ContinuationTrace trace = continue_critical_point(fam, round);
        CHECK(std::abs(trace.samples.back().zeta - fam.anchor_zeta) < 1e-8);
    }
}

TEST_CASE("two transfer routes agree on random admissible paths") {
    SplitMix64 rng(44);
    int checked = 0;
    for (int fam_index = 0; fam_index < 4; ++fam_index) {
        const int n = 3 + fam_index % 3;
        const VariationFamily fam = random_family(45, static_cast<uint64_t>(fam_index), n);
        for (int path_index = 0; path_index < 3; ++path_index) {
            const PathSpec path = random_admissible_path(fam, rng);
            const ContinuationTrace trace = continue_critical_point(fam, path);
            CHECK(std::abs(trace.f_closed - trace.f_integral) <
                  1e-6 * (1.0 + std::abs(trace.f_closed)));
            CHECK(rho_identity_check(fam, trace) < 1e-8);
            ++checked;
        }
    }
    CHECK(checked == 12);
}

TEST_CASE("monodromy") {
    const VariationFamily fam = cube_family();
    SUBCASE("small loop around a branch projection swaps the sheets") {
        const PathSpec loop = PathSpec::circle(kProjUpper, 0.1, 0.0, 1);
        const std::vector<int> perm = monodromy(fam, loop);
        REQUIRE(perm.size() == 2);
        CHECK(perm[0] == 1);
        CHECK(perm[1] == 0);
    }
    SUBCASE("contractible loop is the identity") {
        const PathSpec loop = PathSpec::circle(Cplx(-3, 0), 0.05, 0.0, 1);
        const std::vector<int> perm = monodromy(fam, loop);
        REQUIRE(perm.size() == 2);
        CHECK(perm[0] == 0);
        CHECK(perm[1] == 1);
    }
    SUBCASE("concatenation composes permutations") {
        // two loops with the same base point, one around each projection
        const Cplx base = kProjUpper + Cplx(0.1, 0);
        const Cplx lower_center = std::conj(kProjUpper);
        PathSpec first = PathSpec::circle(kProjUpper, 0.1, 0.0, 1);

        PathSpec second = PathSpec::polyline({base, lower_center + Cplx(0.1, 0)});
        second.append(PathSpec::circle(lower_center, 0.1, 0.0, 1));
        second.append(PathSpec::polyline({lower_center + Cplx(0.1, 0), base}));

        PathSpec both = first;
        both.append(second);

        const std::vector<int> p1 = monodromy(fam, first);
        const std::vector<int> p2 = monodromy(fam, second);
        const std::vector<int> p12 = monodromy(fam, both);
        REQUIRE(p1.size() == 2);
        REQUIRE(p2.size() == 2);
        for (size_t i = 0; i < 2; ++i)
            CHECK(p12[i] == p2[static_cast<size_t>(p1[i])]);
        // a reflection conjugate of a transposition is the same transposition,
        // so the two generators compose to the identity
        CHECK(p12[0] == 0);
        CHECK(p12[1] == 1);
    }
    SUBCASE("monodromy is a bijection on random loops") {
        SplitMix64 rng(46);
        for (int trial = 0; trial < 4; ++trial) {
            const int n = 3 + trial;
            const VariationFamily fam2 = random_family(47, static_cast<uint64_t>(trial), n);
            const PathSpec loop = random_admissible_path(fam2, rng, true);
            if (!loop.is_closed())
                continue;
            const std::vector<int> perm = monodromy(fam2, loop);
            std::vector<bool> seen(perm.size(), false);
            for (int target : perm) {
                REQUIRE(target >= 0);
                REQUIRE(target < static_cast<int>(perm.size()));
                CHECK_FALSE(seen[static_cast<size_t>(target)]);
                seen[static_cast<size_t>(target)] = true;
            }
        }
    }
    SUBCASE("open paths are rejected") {
        CHECK_THROWS_AS(monodromy(fam, PathSpec::polyline({Cplx(-1, 0), Cplx(-2, 0)})),
                        std::invalid_argument);
    }
}

TEST_CASE("sheets at infinity") {
    SUBCASE("cube family: one pole sheet, one finite sheet") {
        const VariationFamily fam = cube_family();
        const std::vector<SheetInfo> sheets = classify_sheets_at_infinity(fam);
        REQUIRE(sheets.size() == 2);
        int poles = 0;
        for (const SheetInfo& sheet : sheets) {
            if (sheet.kind == SheetInfo::Kind::pole_sheet) {
                ++poles;
                REQUIRE(sheet.u_over_zeta_limit.has_value());
                // series limit n/(n-1); the competing candidate (n+1)/n = 4/3
                // misses by ~0.17
                CHECK(std::abs(*sheet.u_over_zeta_limit - 1.5) < 1e-3);
                REQUIRE(sheet.pole_order_estimate.has_value());
                MESSAGE("pole order estimate (expect n-2 = 1): ",
                        *sheet.pole_order_estimate);
                CHECK(std::abs(*sheet.pole_order_estimate - 1.0) < 0.05);
            } else {
                REQUIRE(sheet.xi.has_value());
                CHECK(std::abs(*sheet.xi - Cplx(0.5, 0)) < 1e-10);
                REQUIRE(sheet.c.has_value());
                // limit of the closed form: prefactor * q(xi) / xi = 3/4
                CHECK(std::abs(*sheet.c - Cplx(oracles::kFiniteSheetLimit, 0)) < 1e-9);
                CHECK(std::abs(fam.dq(*sheet.xi)) < 1e-8);
            }
        }
        CHECK(poles == 1);
    }
    SUBCASE("the finite-sheet limit matches the continued transfer factor") {
        // anchor +1/sqrt3 rides the finite sheet along the outward ray
        const VariationFamily fam = cube_family(1);
        const ContinuationTrace trace = continue_critical_point(
            fam, PathSpec::polyline({Cplx(-1, 0), Cplx(-1e4, 0)}));
        CHECK(std::abs(trace.f_closed - Cplx(oracles::kFiniteSheetLimit, 0)) < 5e-4);
        const std::vector<SheetInfo> sheets = classify_sheets_at_infinity(fam);
        for (const SheetInfo& sheet : sheets)
            if (sheet.kind == SheetInfo::Kind::finite_sheet)
                CHECK(std::abs(*sheet.c - trace.f_closed) < 5e-4);
    }
    SUBCASE("n = 2 family: a single pole sheet") {
        const Polynomial p({{0, 0}, {-1, 0}, {1, 0}});
        const std::vector<SheetInfo> sheets =
            classify_sheets_at_infinity(build_family(p, 0, 0));
        REQUIRE(sheets.size() == 1);
        CHECK(sheets[0].kind == SheetInfo::Kind::pole_sheet);
        CHECK(std::abs(*sheets[0].u_over_zeta_limit - 2.0) < 1e-3);  // n/(n-1) = 2
    }
}

TEST_CASE("branch projections stay in the closed unit disk") {
    // boundary case: the cube family attains |phi(w)| = 1 exactly
    for (const Cplx& proj : branch_points(cube_family()).branch_projections)
        CHECK(std::abs(proj) <= 1.0 + 1e-8);
    for (int trial = 0; trial < 20; ++trial) {
        const VariationFamily fam = random_family(48, static_cast<uint64_t>(trial), 3 + trial % 3);
        for (const Cplx& proj : branch_points(fam).branch_projections)
            CHECK(std::abs(proj) <= 1.0 + 1e-8);
    }
}

TEST_CASE("fibers over the unit circle are distinct away from projections") {
    for (int trial = 0; trial < 8; ++trial) {
        const VariationFamily fam = random_family(49, static_cast<uint64_t>(trial), 3 + trial % 3);
        const SurfaceAtlas atlas = branch_points(fam);
        for (int k = 0; k < 40; ++k) {
            const double th = 2.0 * std::numbers::pi * k / 40.0;
            const Cplx u(std::cos(th), std::sin(th));
            double clearance = 1e300;
            for (const Cplx& proj : atlas.branch_projections)
                clearance = std::min(clearance, std::abs(u - proj));
            if (clearance < 1e-3)
                continue;
            const std::vector<Cplx> pts = fiber(fam, u);
            CHECK(pts.size() == static_cast<size_t>(fam.degree_n - 1));
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t j = i + 1; j < pts.size(); ++j)
                    CHECK(std::abs(pts[i] - pts[j]) > 1e-6);
        }
    }
}

TEST_CASE("limit behavior near the excluded points") {
    const VariationFamily fam = cube_family();
    SUBCASE("u -> 0 on the sheet through the origin: rho -> 1/2") {
        for (double angle : {0.3, 2.0, 4.4}) {
            const Cplx u = 1e-4 * Cplx(std::cos(angle), std::sin(angle));
            const std::vector<Cplx> pts = fiber(fam, u);
            const Cplx near0 = *std::min_element(pts.begin(), pts.end(), [](Cplx a, Cplx b) {
                return std::abs(a) < std::abs(b);
            });
            const Polynomial p = polynomial_at(fam, u);
            const double value =
                std::abs(p(near0)) / (std::abs(near0) * std::abs(p.coefficient(1)));
            CHECK(std::abs(value - 0.5) < 1e-3);
        }
    }
    SUBCASE("u -> 0 on the other sheet: the transfer factor blows up") {
        auto far_f = [&](double radius) {
            const Cplx u(-radius, 0);
            const std::vector<Cplx> pts = fiber(fam, u);
            const Cplx far = *std::max_element(pts.begin(), pts.end(), [](Cplx a, Cplx b) {
                return std::abs(a) < std::abs(b);
            });
            return std::abs(rho_transfer_closed(fam, u, far));
        };
        CHECK(far_f(1e-4) > 5.0 * far_f(1e-3));
    }
    SUBCASE("u -> z_2 on the colliding sheet: rho -> 0 monotonically") {
        const Cplx z2(1, 0);
        double previous = 1e300;
        for (double dist : {1e-4, 3e-5, 1e-5}) {
            const Cplx u = z2 + Cplx(dist, 0.5 * dist);
            const std::vector<Cplx> pts = fiber(fam, u);
            const Cplx colliding = *std::min_element(pts.begin(), pts.end(), [&](Cplx a, Cplx b) {
                return std::abs(a - z2) < std::abs(b - z2);
            });
            const Polynomial p = polynomial_at(fam, u);
            const double value =
                std::abs(p(colliding)) / (std::abs(colliding) * std::abs(p.coefficient(1)));
            CHECK(value < 1e-3);
            CHECK(value < previous);
            previous = value;
        }
    }
}
