#include <doctest.h>

#include "smalelab/polynomial.hpp"
#include "smalelab/rng.hpp"
#include "smalelab/rootfind.hpp"

#include "oracles.hpp"

using namespace smalelab;

namespace {

Polynomial cube_minus_z() {
    return Polynomial({{0, 0}, {-1, 0}, {0, 0}, {1, 0}});
}

}  // namespace

TEST_CASE("construction trims trailing zeros and rejects bad input") {
    Polynomial p({{1, 0}, {2, 0}, {0, 0}, {0, 0}});
    CHECK(p.degree() == 1);
    CHECK(Polynomial(std::vector<Cplx>{Cplx(0, 0)}).is_zero());
    CHECK_THROWS_AS(Polynomial(std::vector<Cplx>{}), std::invalid_argument);
    CHECK_THROWS_AS(Polynomial(std::vector<Cplx>{Cplx(std::nan(""), 0)}),
                    std::invalid_argument);
}

TEST_CASE("from_roots") {
    SUBCASE("single root with origin") {
        RootConfiguration cfg{{Cplx(1, 0)}, true};
        CHECK(from_roots(cfg) == Polynomial({{0, 0}, {-1, 0}, {1, 0}}));
    }
    SUBCASE("antipodal pair gives the two-term cubic") {
        RootConfiguration cfg{{Cplx(1, 0), Cplx(-1, 0)}, true};
        CHECK(from_roots(cfg) == cube_minus_z());
    }
    SUBCASE("no roots, scaled") {
        RootConfiguration cfg{{}, true};
        CHECK(from_roots(cfg, Cplx(3, 0)) == Polynomial({{0, 0}, {3, 0}}));
    }
    SUBCASE("zero leading coefficient is rejected") {
        RootConfiguration cfg{{Cplx(1, 0)}, false};
        CHECK_THROWS_AS(from_roots(cfg, Cplx(0, 0)), std::invalid_argument);
    }
    SUBCASE("vanishes at every listed root") {
        SplitMix64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            const int count = 1 + static_cast<int>(rng.next() % 8);
            std::vector<Cplx> roots;
            for (int i = 0; i < count; ++i)
                roots.push_back(rng.uniform_disk(2.0));
            const Polynomial p = from_roots(roots);
            for (const Cplx& r : roots) {
                const double bound = 1e-10 * std::pow(1.0 + std::abs(r), count);
                CHECK(std::abs(p(r)) <= bound);
            }
        }
    }
}

TEST_CASE("evaluation") {
    const Polynomial p = cube_minus_z();
    CHECK(p(Cplx(2, 0)) == Cplx(6, 0));
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(p(Cplx(inv_sqrt3, 0)) - Cplx(oracles::kEvalCubeAtInvSqrt3, 0)) < 1e-15);
    const Polynomial q({{0, 0}, {-1, 0}, {1, 0}});  // z^2 - z
    CHECK(q(Cplx(0, 0)) == Cplx(0, 0));
}

TEST_CASE("derivative") {
    CHECK(derivative(cube_minus_z()) == Polynomial({{-1, 0}, {0, 0}, {3, 0}}));
    CHECK(derivative(Polynomial({{0, 0}, {-1, 0}, {1, 0}})) == Polynomial({{-1, 0}, {2, 0}}));
    CHECK(derivative(Polynomial::constant(Cplx(5, 0))).is_zero());

    SUBCASE("linearity is exact in coefficients") {
        // small-integer data keeps every intermediate product exact, so the
        // two evaluation orders agree bitwise
        SplitMix64 rng(12);
        auto small_int = [&rng]() {
            return Cplx(static_cast<double>(rng.next() % 17) - 8.0,
                        static_cast<double>(rng.next() % 17) - 8.0);
        };
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Cplx> ca(5), cb(5);
            for (int i = 0; i < 5; ++i) {
                ca[static_cast<size_t>(i)] = small_int();
                cb[static_cast<size_t>(i)] = small_int();
            }
            const Polynomial a(ca), b(cb);
            const Cplx alpha(2.0, 0.0), beta(0.0, -3.0);
            CHECK(derivative(alpha * a + beta * b) ==
                  alpha * derivative(a) + beta * derivative(b));
        }
    }
}

TEST_CASE("difference quotient") {
    const Polynomial q({{0, 0}, {-1, 0}, {1, 0}});
    CHECK(std::abs(difference_quotient(q, Cplx(0.5, 0), Cplx(0, 0)) - Cplx(-0.5, 0)) < 1e-15);

    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    // (p(zeta) - p(0))/zeta = zeta^2 - 1 = -2/3
    CHECK(std::abs(difference_quotient(cube_minus_z(), Cplx(inv_sqrt3, 0), Cplx(0, 0)) -
                   Cplx(-2.0 / 3.0, 0)) < 1e-15);

    const Polynomial identity({{0, 0}, {1, 0}});
    CHECK(difference_quotient(identity, Cplx(3, 1), Cplx(-2, 5)) == Cplx(1, 0));

    CHECK_THROWS_AS(difference_quotient(q, Cplx(1, 1), Cplx(1, 1)), std::invalid_argument);

    SUBCASE("defining identity") {
        SplitMix64 rng(13);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Cplx> c(6);
            for (auto& x : c)
                x = rng.uniform_disk(1.5);
            const Polynomial p(c);
            const Cplx zeta = rng.uniform_disk(2.0);
            const Cplx z = rng.uniform_disk(2.0);
            if (zeta == z)
                continue;
            const Cplx lhs = difference_quotient(p, zeta, z) * (zeta - z) + p(z);
            CHECK(std::abs(lhs - p(zeta)) <= 1e-12 * (1.0 + std::abs(p(zeta))));
        }
    }
}

TEST_CASE("blow up") {
    CHECK(blow_up(cube_minus_z(), 2.0) == Polynomial({{0, 0}, {-4, 0}, {0, 0}, {1, 0}}));
    CHECK(blow_up(Polynomial({{0, 0}, {-1, 0}, {1, 0}}), 3.0) ==
          Polynomial({{0, 0}, {-3, 0}, {1, 0}}));
    const Polynomial p({{1, 2}, {3, -1}, {0.5, 0}});
    CHECK(blow_up(p, 1.0) == p);
    CHECK_THROWS_AS(blow_up(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(blow_up(p, -2.0), std::invalid_argument);

    SUBCASE("roots scale by r") {
        SplitMix64 rng(14);
        for (int trial = 0; trial < 40; ++trial) {
            const int deg = 2 + static_cast<int>(rng.next() % 9);
            std::vector<Cplx> roots;
            for (int i = 0; i < deg; ++i)
                roots.push_back(rng.uniform_disk(1.5));
            const double r = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
            const Polynomial p0 = from_roots(roots);
            RootFindReport scaled = all_roots(blow_up(p0, r));
            REQUIRE(scaled.converged);
            // match each expected root r*z to the nearest found root
            for (const Cplx& z : roots) {
                double best = 1e300;
                for (const Cplx& w : scaled.roots)
                    best = std::min(best, std::abs(w - r * z));
                CHECK(best <= 1e-10 * (1.0 + std::abs(r * z)));
            }
        }
    }
}

TEST_CASE("translate to origin") {
    SUBCASE("square shifted by one") {
        const Polynomial sq({{0, 0}, {0, 0}, {1, 0}});
        CHECK(translate_to_origin(sq, Cplx(1, 0)) == Polynomial({{0, 0}, {2, 0}, {1, 0}}));
    }
    SUBCASE("no-op at the origin when p(0)=0") {
        const Polynomial p = cube_minus_z();
        CHECK(translate_to_origin(p, Cplx(0, 0)) == p);
    }
    SUBCASE("cubic shifted to -1; oracle (w-1)^3 - (w-1) expanded") {
        CHECK(translate_to_origin(cube_minus_z(), Cplx(-1, 0)) ==
              Polynomial({{0, 0}, {2, 0}, {-3, 0}, {1, 0}}));
    }
    SUBCASE("result vanishes at the origin exactly and matches p'(z0)") {
        SplitMix64 rng(15);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Cplx> c(7);
            for (auto& x : c)
                x = rng.uniform_disk(1.0);
            const Polynomial p(c);
            const Cplx z0 = rng.uniform_disk(1.5);
            const Polynomial shifted = translate_to_origin(p, z0);
            CHECK(shifted.coefficient(0) == Cplx(0, 0));
            CHECK(std::abs(shifted.coefficient(1) - derivative(p)(z0)) <= 1e-12);
        }
    }
}

TEST_CASE("normalize to class") {
    SUBCASE("roots 0, +-2 scale to 0, +-1") {
        const Polynomial p({{0, 0}, {-4, 0}, {0, 0}, {1, 0}});
        const Normalized result = normalize_to_class(p);
        CHECK(result.scale == doctest::Approx(2.0).epsilon(1e-12));
        for (int k = 0; k <= 3; ++k)
            CHECK(std::abs(result.poly.coefficient(k) - cube_minus_z().coefficient(k)) < 1e-12);
    }
    SUBCASE("already normalized") {
        const Polynomial q({{0, 0}, {-1, 0}, {1, 0}});
        const Normalized result = normalize_to_class(q);
        CHECK(result.scale == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(result.poly.coefficient(1) - Cplx(-1, 0)) < 1e-12);
    }
    SUBCASE("monic rescale only") {
        const Polynomial p({{0, 0}, {-2, 0}, {2, 0}});
        const Normalized result = normalize_to_class(p);
        CHECK(result.scale == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(result.poly.coefficient(1) - Cplx(-1, 0)) < 1e-12);
        CHECK(std::abs(result.poly.coefficient(2) - Cplx(1, 0)) < 1e-12);
    }
    SUBCASE("max root modulus is 1 afterwards") {
        SplitMix64 rng(16);
        for (int trial = 0; trial < 25; ++trial) {
            const int deg = 3 + static_cast<int>(rng.next() % 5);
            std::vector<Cplx> roots;
            for (int i = 0; i < deg - 1; ++i) {
                Cplx z = rng.uniform_disk(2.0);
                while (std::abs(z) < 0.05)
                    z = rng.uniform_disk(2.0);
                roots.push_back(z);
            }
            RootConfiguration cfg{roots, true};
            const Normalized result = normalize_to_class(from_roots(cfg));
            RootFindReport rep = all_roots(result.poly);
            double worst = 0.0;
            for (const Cplx& z : rep.roots)
                worst = std::max(worst, std::abs(z));
            CHECK(worst == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("precondition violations throw") {
        CHECK_THROWS_AS(normalize_to_class(Polynomial({{1, 0}, {1, 0}, {1, 0}})),
                        std::invalid_argument);  // p(0) != 0
        CHECK_THROWS_AS(normalize_to_class(Polynomial({{0, 0}, {0, 0}, {1, 0}})),
                        std::invalid_argument);  // p'(0) == 0
        CHECK_THROWS_AS(normalize_to_class(Polynomial({{0, 0}, {1, 0}})),
                        std::invalid_argument);  // degree < 2
    }
}

TEST_CASE("root configuration round trip is stable") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int deg = 3 + static_cast<int>(rng.next() % 10);  // up to 12
        std::vector<Cplx> roots;
        for (int i = 0; i < deg - 1; ++i)
            roots.push_back(rng.uniform_disk(2.0));
        RootConfiguration cfg{roots, true};
        const Polynomial p = from_roots(cfg);
        CHECK(p(Cplx(0, 0)) == Cplx(0, 0));

        RootFindReport rep = all_roots(p);
        REQUIRE(rep.converged);
        std::vector<Cplx> nonzero;
        for (const Cplx& z : rep.roots)
            if (std::abs(z) > 1e-9)
                nonzero.push_back(z);
        const Polynomial rebuilt = from_roots(RootConfiguration{nonzero, true});
        for (int k = 0; k <= p.degree(); ++k) {
            CHECK(std::abs(rebuilt.coefficient(k) - p.coefficient(k)) <=
                  1e-10 * (1.0 + p.coefficient_scale()));
        }
    }
}
