#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pinterp/family.hpp"
#include "pinterp/finite_diff.hpp"
#include "pinterp/lattice.hpp"
#include "oracles.hpp"

using namespace pinterp;

TEST_CASE("build_lattice basics") {
    const Lattice l = build_lattice_1d(-4.0, 4.0, 81);
    CHECK(l.spacing(0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(l.coord(0, 0) == -4.0);
    CHECK(l.coord(0, 80) == 4.0);
    CHECK(l.coord(0, 40) == 0.0);  // exact center on symmetric axes

    const Lattice l2 = build_lattice_2d(-3.0, 3.0, 61, -3.0, 3.0, 61);
    CHECK(l2.spacing(0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(l2.spacing(1) == doctest::Approx(0.1).epsilon(1e-15));

    CHECK_THROWS_WITH_AS(build_lattice_1d(2.0, -2.0, 11), "inverted bounds",
                         std::invalid_argument);
    CHECK_THROWS_AS(build_lattice_1d(0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_lattice_1d(0.0, std::nan(""), 11), std::invalid_argument);
}

TEST_CASE("symmetric lattices mirror bitwise") {
    const Lattice l = build_lattice_1d(-6.0, 6.0, 129);
    for (int i = 0; i < 129; ++i) CHECK(l.coord(0, i) == -l.coord(0, 128 - i));
}

TEST_CASE("sample catalog values") {
    const Lattice l = build_lattice_1d(-4.0, 4.0, 81);
    const GridFunction q = sample(FamilySpec::quadratic(1.0), l);
    CHECK(q.at(60) == 2.0);  // x = 2 -> x^2/2
    CHECK(q.even());

    const Lattice l2 = build_lattice_2d(-2.0, 2.0, 41, -2.0, 2.0, 41);
    const GridFunction g1 = sample(FamilySpec::gauge_power(Body::l1_ball(1.0, 2), 1.0), l2);
    CHECK(g1.at(30, 30) == doctest::Approx(2.0).epsilon(1e-14));  // ||(1,1)||_1

    const GridFunction ge = sample(FamilySpec::gauge_power(Body::ellipsoid(1.0, 0.0, 4.0), 2.0), l2);
    // gauge of ellipsoid x'Ax<=1 at (1,0): sqrt(1) -> g^2/2 = 0.5
    CHECK(ge.at(30, 20) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("gauge sampled value matches brute-force gauge minimization") {
    // gauge(x) = min { s : x/s in K } for the ellipsoid diag(1,4).
    const Body K = Body::ellipsoid(1.0, 0.0, 4.0);
    const double pt[2] = {1.0, 0.0};
    double lo = 0.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double z[2] = {pt[0] / mid, pt[1] / mid};
        const double q = z[0] * z[0] + 4.0 * z[1] * z[1];
        (q <= 1.0 ? hi : lo) = mid;
    }
    CHECK(K.gauge(std::span<const double>(pt, 2)) == doctest::Approx(hi).epsilon(1e-10));
}

TEST_CASE("finite_diff exact on quadratics, O(h^2) on quartics") {
    const Lattice l = build_lattice_1d(-2.0, 2.0, 81);
    const GridFunction q = sample(FamilySpec::quadratic(1.0), l);
    const DerivativeField d = finite_diff(q);
    for (int i = 1; i < 80; ++i) {
        CHECK(d.is_valid(i));
        CHECK(d.hxx[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_FALSE(d.is_valid(0));
    CHECK_FALSE(d.is_valid(80));

    // f = x^4/4: f'' = 3x^2, stencil error h^2/2 at x=1.
    const GridFunction f = sample(FamilySpec::even_polynomial({0.0, 0.25}), l);
    const DerivativeField df = finite_diff(f);
    const int i1 = 60;  // x = 1
    CHECK(l.coord(0, i1) == doctest::Approx(1.0));
    CHECK(df.hxx[i1] == doctest::Approx(3.0).epsilon(2e-3));
}

TEST_CASE("finite_diff inf sentinel marks non-evaluable") {
    const Lattice l = build_lattice_1d(-1.0, 1.0, 11);
    std::vector<double> v(11, 1.0);
    v[5] = kPosInf;
    const GridFunction f(l, v);
    const DerivativeField d = finite_diff(f);
    CHECK_FALSE(d.is_valid(4));
    CHECK_FALSE(d.is_valid(5));
    CHECK_FALSE(d.is_valid(6));
    CHECK(d.is_valid(3));
}

TEST_CASE("finite_diff order >= 1.8 on even-polynomial catalog") {
    // Dyadic refinement triple on f = x^2 + 0.5 x^4 at x = 0.75.
    const FamilySpec fam = FamilySpec::even_polynomial({1.0, 0.5});
    auto err = [&](int count) {
        const Lattice l = build_lattice_1d(-3.0, 3.0, count);
        const GridFunction f = sample(fam, l);
        const DerivativeField d = finite_diff(f);
        double worst = 0.0;
        for (int i = 1; i + 1 < count; ++i) {
            const double x = l.coord(0, i);
            if (std::abs(x) > 2.0) continue;
            const double exact = 2.0 + 6.0 * x * x;
            worst = std::max(worst, std::abs(d.hxx[i] - exact));
        }
        return worst;
    };
    const double e1 = err(193), e2 = err(385), e3 = err(769);
    CHECK(oracles::observed_order(e1, e2) >= 1.8);
    CHECK(oracles::observed_order(e2, e3) >= 1.8);
}

TEST_CASE("even flag requires symmetric values") {
    const Lattice l = build_lattice_1d(-1.0, 1.0, 21);
    GridFunction f = sample(FamilySpec::quadratic(2.0), l);
    CHECK(f.validate_even());
    f[3] += 1e-6;
    CHECK_FALSE(f.validate_even());
}

TEST_CASE("custom table convexity warning") {
    const Lattice l = build_lattice_1d(-1.0, 1.0, 5);
    const GridFunction bad = sample(FamilySpec::custom_table({0.0, 1.0, 0.0, 1.0, 0.0}), l);
    CHECK(bad.convexity_warning());
    const GridFunction good = sample(FamilySpec::custom_table({1.0, 0.25, 0.0, 0.25, 1.0}), l);
    CHECK_FALSE(good.convexity_warning());
}

TEST_CASE("convexity window certification") {
    const Lattice l = build_lattice_1d(-3.0, 3.0, 101);
    GridFunction f = sample(FamilySpec::quadratic(0.5), l);
    const auto R = certify_convexity_window(f);
    REQUIRE(R.has_value());
    CHECK(*R == doctest::Approx(2.0).epsilon(1e-6));  // min eig 0.5 -> R = 2

    GridFunction g = sample(FamilySpec::custom_table({0.0, 1.0, 0.0, 1.0, 0.0}),
                            build_lattice_1d(-1.0, 1.0, 5));
    CHECK_FALSE(certify_convexity_window(g).has_value());
}

TEST_CASE("tail bound guard") {
    CHECK(tail_bound(8.0, 1.0) == doctest::Approx(std::exp(-16.0)));
    CHECK(tail_bound(4.0, 4.0) < 1e-1);
}
