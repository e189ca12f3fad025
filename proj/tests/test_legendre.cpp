#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pinterp/family.hpp"
#include "pinterp/legendre.hpp"
#include "pinterp/rng.hpp"
#include "oracles.hpp"

using namespace pinterp;

namespace {

GridFunction random_convexish_1d(Rng& rng, const Lattice& l) {
    // Smooth strongly convex sample with random coefficients.
    const double a = rng.uniform(0.3, 3.0);
    const double b = rng.uniform(0.0, 0.4);
    const double c = rng.uniform(-0.8, 0.8);
    std::vector<double> v(l.size());
    for (int i = 0; i < l.count(0); ++i) {
        const double x = l.coord(0, i);
        v[i] = 0.5 * a * (x - c) * (x - c) + b * std::pow(x - c, 4);
    }
    return GridFunction(l, std::move(v));
}

GridFunction random_rough_1d(Rng& rng, const Lattice& l) {
    std::vector<double> v(l.size());
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    return GridFunction(l, std::move(v));
}

}  // namespace

TEST_CASE("legendre_1d matches closed forms") {
    const Lattice l = build_lattice_1d(-4.0, 4.0, 161);
    const GridFunction f = sample(FamilySpec::quadratic(1.0), l);
    const DualLattice d = auto_dual_lattice(f);
    const GridFunction g = legendre_1d(f, d);
    // Self-dual: Lf(y) = y^2/2 on the attained window (secant error h^2/8).
    for (int j = 0; j < d.lattice.count(0); ++j) {
        const double y = d.lattice.coord(0, j);
        CHECK(std::abs(g[j] - 0.5 * y * y) <= 0.5 * l.spacing(0) * l.spacing(0));
    }

    // lambda = 2: Lf(1) = 1/(2*2) = 0.25.
    const GridFunction f2 = sample(FamilySpec::quadratic(2.0), l);
    const DualLattice d2 = auto_dual_lattice(f2);
    const GridFunction g2 = legendre_1d(f2, d2);
    // Find y = 1 via brute force at that dual point.
    double best = -oracles::kInf;
    const auto xs = l.axis_coords(0);
    const std::vector<double> vv(f2.values().begin(), f2.values().end());
    best = oracles::brute_legendre_1d(xs, vv, 1.0);
    CHECK(best == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("legendre of |x| is the indicator of [-1,1]") {
    const Lattice l = build_lattice_1d(-4.0, 4.0, 81);
    const GridFunction f = sample(FamilySpec::gauge_power(Body::box({1.0}), 1.0), l);
    // Expanded window: values beyond the attained slopes carry +inf.
    const DualLattice d = auto_dual_lattice(f, 2.0);
    const GridFunction g = legendre_1d(f, d);
    for (int j = 0; j < d.lattice.count(0); ++j) {
        const double y = d.lattice.coord(0, j);
        if (std::abs(y) <= 1.0)
            CHECK(g[j] == 0.0);
        else
            CHECK(g[j] == kPosInf);
    }
}

TEST_CASE("transform equals brute-force sup bitwise (1D)") {
    Rng rng(20240811ULL);
    const Lattice l = build_lattice_1d(-4.0, 4.0, 129);
    const auto xs = l.axis_coords(0);
    for (int rep = 0; rep < 10; ++rep) {
        const GridFunction f = rep % 2 ? random_rough_1d(rng, l) : random_convexish_1d(rng, l);
        const DualLattice d = auto_dual_lattice(f);
        const GridFunction g = legendre_1d(f, d);
        const std::vector<double> vv(f.values().begin(), f.values().end());
        for (int j = 0; j < d.lattice.count(0); ++j) {
            const double y = d.lattice.coord(0, j);
            const double oracle = oracles::brute_legendre_1d(xs, vv, y);
            REQUIRE(g[j] == oracle);  // bitwise
        }
    }
}

TEST_CASE("factorized 2D transform equals brute-force sup bitwise") {
    Rng rng(77ULL);
    const Lattice l = build_lattice_2d(-3.0, 3.0, 65, -3.0, 3.0, 65);
    for (int rep = 0; rep < 4; ++rep) {
        std::vector<double> v(l.size());
        if (rep % 2) {
            for (auto& x : v) x = rng.uniform(-2.0, 2.0);
        } else {
            const double a = rng.uniform(0.4, 2.0), c = rng.uniform(0.5, 3.0);
            const double b = rng.uniform(-0.5, 0.5) * std::sqrt(a * c);
            for (std::size_t k = 0; k < l.size(); ++k) {
                const auto p = l.point(k);
                v[k] = 0.5 * (a * p[0] * p[0] + 2 * b * p[0] * p[1] + c * p[1] * p[1]);
            }
        }
        const GridFunction f(l, v);
        const DualLattice d = auto_dual_lattice(f);
        const GridFunction g = legendre_nd(f, d);
        for (int j0 = 0; j0 < d.lattice.count(0); ++j0) {
            for (int j1 = 0; j1 < d.lattice.count(1); ++j1) {
                const double oracle = oracles::brute_legendre_2d(
                    l, f.values(), d.lattice.coord(0, j0), d.lattice.coord(1, j1));
                REQUIRE(g[d.lattice.index(j0, j1)] == oracle);
            }
        }
    }
}

TEST_CASE("2D closed forms") {
    const Lattice l = build_lattice_2d(-4.0, 4.0, 81, -4.0, 4.0, 81);
    const GridFunction f = sample(FamilySpec::quadratic2d(1.0, 0.0, 4.0), l);
    const DualLattice d = auto_dual_lattice(f);
    const GridFunction g = legendre_nd(f, d);
    // L f (y) = y' diag(1, 1/4) y / 2: at y=(0,2) -> 0.5.
    double worst = 0.0;
    for (int j0 = 0; j0 < d.lattice.count(0); ++j0) {
        for (int j1 = 0; j1 < d.lattice.count(1); ++j1) {
            const double y0 = d.lattice.coord(0, j0), y1 = d.lattice.coord(1, j1);
            const double exact = 0.5 * (y0 * y0 + y1 * y1 / 4.0);
            worst = std::max(worst, std::abs(g[d.lattice.index(j0, j1)] - exact));
        }
    }
    CHECK(worst <= 0.5 * l.spacing(0) * l.spacing(0) + 1e-12);

    // ||x||_1 -> indicator of [-1,1]^2 on the attained window (0 there).
    const GridFunction f1 = sample(FamilySpec::gauge_power(Body::l1_ball(1.0, 2), 1.0), l);
    const DualLattice d1 = auto_dual_lattice(f1);
    const GridFunction g1 = legendre_nd(f1, d1);
    for (std::size_t k = 0; k < g1.size(); ++k) CHECK(g1[k] == 0.0);
}

TEST_CASE("convex envelope: flat bottom of the double well") {
    const Lattice l = build_lattice_1d(-2.0, 2.0, 201);
    std::vector<double> v(l.size());
    for (int i = 0; i < l.count(0); ++i) {
        const double x = l.coord(0, i);
        v[i] = x * x * x * x - x * x;
    }
    const GridFunction f(l, v);
    const GridFunction e = convex_envelope(f);
    const auto xs = l.axis_coords(0);
    const std::vector<double> oracle = oracles::hull_envelope_1d(xs, v);
    for (int i = 0; i < l.count(0); ++i) {
        CHECK(e[i] <= f[i] + 1e-12);
        CHECK(e[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
    }
    // Flat at -0.25 on [-1/sqrt(2), 1/sqrt(2)], equal to f outside.
    const double xin = 0.3, xout = 1.5;
    const int iin = static_cast<int>(std::lround((xin - l.lo(0)) / l.spacing(0)));
    const int iout = static_cast<int>(std::lround((xout - l.lo(0)) / l.spacing(0)));
    CHECK(e[iin] == doctest::Approx(-0.25).epsilon(5e-3));
    CHECK(e[iout] == doctest::Approx(f[iout]).epsilon(1e-12));
}

TEST_CASE("envelope idempotent and identity on convex data") {
    const Lattice l = build_lattice_1d(-3.0, 3.0, 101);
    const GridFunction f = sample(FamilySpec::quadratic(1.5), l);
    const GridFunction e = convex_envelope(f);
    for (std::size_t k = 0; k < f.size(); ++k)
        CHECK(e[k] == doctest::Approx(f[k]).epsilon(1e-12).scale(1.0 + std::abs(f[k])));

    std::vector<double> v(l.size());
    for (int i = 0; i < l.count(0); ++i) {
        const double x = l.coord(0, i);
        v[i] = std::abs(x) + 0.3 * x * x + 0.05 * std::sin(7 * x);
    }
    const GridFunction g(l, v);
    const GridFunction e1 = convex_envelope(g);
    const GridFunction e2 = convex_envelope(e1);
    for (std::size_t k = 0; k < g.size(); ++k) REQUIRE(e2[k] == e1[k]);  // exact idempotence
}

TEST_CASE("order reversal and Young-Fenchel") {
    Rng rng(5150ULL);
    const Lattice l = build_lattice_1d(-3.0, 3.0, 97);
    const GridFunction f = random_convexish_1d(rng, l);
    std::vector<double> gv(f.values().begin(), f.values().end());
    for (auto& x : gv) x += 0.5;  // g = f + 1/2 >= f
    const GridFunction g(l, gv);
    const DualLattice d = auto_dual_lattice(g);
    const GridFunction lf = legendre_1d(f, d);
    const GridFunction lg = legendre_1d(g, d);
    for (std::size_t k = 0; k < lf.size(); ++k) CHECK(lf[k] >= lg[k]);

    // Young-Fenchel with a 1-ulp-scale slack.
    const auto xs = l.axis_coords(0);
    for (int i = 0; i < l.count(0); i += 7) {
        for (int j = 0; j < d.lattice.count(0); j += 7) {
            if (!is_finite_value(lf[j])) continue;
            const double lhs = f[i] + lf[j];
            const double rhs = xs[i] * d.lattice.coord(0, j);
            CHECK(lhs >= rhs - 1e-12 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("involution error is first-order under refinement") {
    // Quartic-dominated entry has genuinely varying curvature.
    const FamilySpec fam = FamilySpec::even_polynomial({0.05, 0.25});
    auto sup_err = [&](int count) {
        const Lattice l = build_lattice_1d(-2.0, 2.0, count);
        const GridFunction f = sample(fam, l);
        const GridFunction e = convex_envelope(f);
        double worst = 0.0;
        for (int i = count / 4; i < 3 * count / 4; ++i)
            worst = std::max(worst, std::abs(e[i] - f[i]));
        return worst;
    };
    const double e1 = sup_err(65), e2 = sup_err(129), e3 = sup_err(257);
    const double lip = 2.0 + 4.0 * 0.25 * 8.0;
    CHECK(e1 <= 2.0 * (4.0 / 64) * lip);
    if (e2 > 1e-12 && e3 > 1e-13) {
        CHECK(oracles::observed_order(e1, e2) >= 0.9);
        CHECK(oracles::observed_order(e2, e3) >= 0.9);
    }
}

TEST_CASE("smooth conjugate is exact on quadratics") {
    const Lattice l = build_lattice_1d(-4.0, 4.0, 129);
    const GridFunction f = sample(FamilySpec::quadratic(2.0), l);
    const DualLattice d = auto_dual_lattice(f);
    const GridFunction g = smooth_conjugate(f, d);
    for (int j = 1; j + 1 < d.lattice.count(0); ++j) {
        const double y = d.lattice.coord(0, j);
        CHECK(g[j] == doctest::Approx(y * y / 4.0).epsilon(1e-12).scale(1.0 + y * y));
    }
}

TEST_CASE("empty finite support throws") {
    const Lattice l = build_lattice_1d(-1.0, 1.0, 11);
    const GridFunction f(l, std::vector<double>(11, kPosInf));
    CHECK_THROWS_AS(auto_dual_lattice(f), std::domain_error);
}
