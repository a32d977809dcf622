#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mu/complex_core.hpp"
#include "mu/errors.hpp"
#include "mu/rng.hpp"

using namespace mu;

namespace {

// independent rational-evaluation oracle for the worked examples
Complex rational_eval(const Complex& a, const Complex& b, const Complex& c,
                      const Complex& d, const Complex& z) {
    return (a * z + b) / (c * z + d);
}

TetraPoint random_point(Rng& rng, double scale = 1.0) {
    return {scale * rng.unit_disc(), scale * rng.unit_disc(),
            scale * rng.unit_disc()};
}

}  // namespace

TEST_CASE("eval_lf: Psi worked examples") {
    const TetraPoint x{0.3, 0.0, 0.2};
    const LinearFractional psi = psi_map(x);

    CHECK(std::abs(eval_lf(psi, 0.0) - Complex(0.3)) < 1e-15);

    // z = -1 cross-checked against a direct rational evaluation
    const Complex expect = rational_eval(0.2, -0.3, 0.0, -1.0, -1.0);
    CHECK(std::abs(expect - Complex(0.5)) < 1e-15);
    CHECK(std::abs(eval_lf(psi, -1.0) - expect) < 1e-15);
}

TEST_CASE("eval_lf: degenerate branch is the constant x1") {
    const TetraPoint x{0.5, 0.5, 0.25};  // x1 x2 == x3
    const LinearFractional psi = psi_map(x);
    CHECK(psi.constant_branch);
    Rng rng(1);
    for (int i = 0; i < 20; ++i)
        CHECK(std::abs(eval_lf(psi, rng.unit_disc()) - Complex(0.5)) < 1e-15);
    // the rational form agrees where defined
    CHECK(std::abs(rational_eval(0.25, -0.5, 0.5, -1.0, 0.3) - Complex(0.5)) < 1e-15);
}

TEST_CASE("eval_lf: pole raises DenominatorVanishes") {
    const TetraPoint x{0.3, 0.5, 0.2};  // pole at z = 2
    CHECK_THROWS_AS(eval_lf(psi_map(x), Complex(2.0)), DenominatorVanishes);
}

TEST_CASE("upsilon is Psi of the swapped point, exactly") {
    Rng rng(42);
    for (int i = 0; i < 1000; ++i) {
        const TetraPoint x = random_point(rng);
        const Complex z = rng.unit_disc();
        const LinearFractional ups = upsilon_map(x);
        const LinearFractional psi_swapped = psi_map(swap12(x));
        if (ups.constant_branch) {
            CHECK(psi_swapped.constant_branch);
            CHECK(ups.constant_value == psi_swapped.constant_value);
            continue;
        }
        // also against the direct formula (x3 z - x2)/(x1 z - 1)
        const Complex direct = rational_eval(x.x3, -x.x2, x.x1, -1.0, z);
        CHECK(eval_lf(ups, z) == eval_lf(psi_swapped, z));
        CHECK(std::abs(eval_lf(ups, z) - direct) < 1e-13);
    }
}

TEST_CASE("psi_image_disc: examples") {
    const DiscImage zero = psi_image_disc({0.0, 0.0, 0.0});
    CHECK(std::abs(zero.center) < 1e-15);
    CHECK(zero.radius < 1e-15);

    const DiscImage d = psi_image_disc({0.3, 0.0, 0.2});
    CHECK(std::abs(d.center - Complex(0.3)) < 1e-15);
    CHECK(d.radius == doctest::Approx(0.2).epsilon(1e-12));

    const DiscImage deg = psi_image_disc({0.5, 0.5, 0.25});
    CHECK(deg.degenerate);
    CHECK(std::abs(deg.center - Complex(0.5)) < 1e-15);
    CHECK(deg.radius == 0.0);

    CHECK_THROWS_AS(psi_image_disc({0.3, 1.5, 0.2}), NormInfinite);
}

TEST_CASE("psi_image_disc: image of the torus lies on the image circle") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        TetraPoint x = random_point(rng);
        if (std::abs(x.x2) > 0.9) x.x2 *= 0.5;
        const LinearFractional psi = psi_map(x);
        if (psi.constant_branch) continue;
        const DiscImage d = psi_image_disc(x);
        double max_dist = 0.0;
        for (int k = 0; k < 64; ++k) {
            const Complex z = unit_phase(2.0 * M_PI * k / 64);
            const double dist = std::abs(eval_lf(psi, z) - d.center);
            CHECK(dist <= d.radius + 1e-10);
            max_dist = std::max(max_dist, dist);
        }
        CHECK(max_dist >= d.radius - 1e-10);  // the boundary is attained
    }
}

TEST_CASE("d_norm: examples and the infinity marker") {
    CHECK(d_norm({0.0, 0.0, 0.0}).value == 0.0);

    const ExtReal d = d_norm({0.3, 0.0, 0.2});
    REQUIRE(d.finite());
    CHECK(d.value == doctest::Approx(0.5).epsilon(1e-14));

    const ExtReal deg = d_norm({0.5, 0.5, 0.25});
    REQUIRE(deg.finite());
    CHECK(deg.value == doctest::Approx(0.5).epsilon(1e-14));

    const ExtReal inf = d_norm({0.3, 1.5, 0.2});
    CHECK(inf.infinite);

    // degenerate with |x2| >= 1 stays finite: Psi is the constant x1
    const ExtReal deg2 = d_norm({0.25, 2.0, 0.5});
    REQUIRE(deg2.finite());
    CHECK(deg2.value == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("d_norm equals |center| + radius of the image disc") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        TetraPoint x = random_point(rng);
        if (std::abs(x.x2) >= 1.0) continue;
        const DiscImage img = psi_image_disc(x);
        const ExtReal d = d_norm(x);
        REQUIRE(d.finite());
        CHECK(d.value ==
              doctest::Approx(std::abs(img.center) + img.radius).epsilon(1e-12));
    }
}

TEST_CASE("sup_norm_grid: examples") {
    CHECK(sup_norm_grid(psi_map({0.0, 0.0, 0.0}), 64) == 0.0);

    CHECK(sup_norm_grid(psi_map({0.3, 0.0, 0.2}), 4096) ==
          doctest::Approx(0.5).epsilon(1e-6));

    // Blaschke factor (z - 0.5)/(0.5 z - 1) is unimodular on the circle
    const LinearFractional blaschke{1.0, -0.5, 0.5, -1.0};
    CHECK(std::abs(sup_norm_grid(blaschke, 4096) - 1.0) < 1e-9);

    CHECK_THROWS_AS(sup_norm_grid(psi_map({0.3, 0.0, 0.2}), 8),
                    std::invalid_argument);

    // pole on the torus: x2 = 1 with x1 x2 != x3
    const LinearFractional pole{0.2, -0.3, 1.0, -1.0};
    CHECK_THROWS_AS(sup_norm_grid(pole, 64), PoleOnBoundary);
}

TEST_CASE("sup_norm_grid: close to d_norm and monotone in n") {
    Rng rng(11);
    int tested = 0;
    while (tested < 150) {
        TetraPoint x = random_point(rng);
        if (std::abs(x.x2) > 0.95) continue;
        ++tested;
        const double d = d_norm(x).value;
        double prev = 0.0;
        for (int n : {256, 1024, 4096}) {
            const double g = sup_norm_grid(psi_map(x), n);
            CHECK(g >= prev - 1e-9);
            prev = g;
        }
        CHECK(std::abs(prev - d) <= 1e-6);
    }
}

TEST_CASE("pseudohyperbolic: examples and metric properties") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const Complex w = rng.unit_disc();
        CHECK(pseudohyperbolic(0.0, w) == doctest::Approx(std::abs(w)).epsilon(1e-14));
    }
    CHECK(pseudohyperbolic(0.5, 0.5) == 0.0);
    CHECK(pseudohyperbolic(0.5, -0.5) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(pseudohyperbolic(1.0, 0.0), OutsideDisc);
    CHECK_THROWS_AS(pseudohyperbolic(0.0, Complex(0.8, 0.7)), OutsideDisc);

    for (int i = 0; i < 500; ++i) {
        const Complex a = rng.unit_disc(), b = rng.unit_disc(), c = rng.unit_disc();
        CHECK(pseudohyperbolic(a, b) == pseudohyperbolic(b, a));  // symmetry exact
        CHECK(pseudohyperbolic(a, c) <=
              pseudohyperbolic(a, b) + pseudohyperbolic(b, c) + 1e-12);
        CHECK(pseudohyperbolic(a, b) < 1.0);
    }
}

TEST_CASE("solve_two_point_pick: examples") {
    const SchurFunction h = solve_two_point_pick(0.0, 0.0, 0.5, 0.25);
    CHECK(std::abs(h(0.0)) < 1e-15);
    CHECK(std::abs(h(0.5) - Complex(0.25)) < 1e-15);
    CHECK(h.boundary_sup(512) <= 1.0 + 1e-9);

    // equal targets admit the constant solution
    const SchurFunction c = solve_two_point_pick(0.0, 0.3, 0.5, 0.3);
    CHECK(std::abs(c(0.0) - Complex(0.3)) < 1e-15);
    CHECK(std::abs(c(0.5) - Complex(0.3)) < 1e-15);
    CHECK(c.boundary_sup(512) <= 1.0 + 1e-9);

    CHECK_THROWS_AS(solve_two_point_pick(0.0, 0.0, 0.5, 0.9), PickInfeasible);
    CHECK_THROWS_AS(solve_two_point_pick(0.5, 0.0, 0.5, 0.1),
                    std::invalid_argument);
}

TEST_CASE("solve_two_point_pick: random feasible data verifies") {
    Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        const Complex z1 = 0.95 * rng.unit_disc();
        Complex z2 = 0.95 * rng.unit_disc();
        if (std::abs(z1 - z2) < 1e-3) z2 += 0.1;
        const Complex w1 = 0.95 * rng.unit_disc();
        // target at pseudohyperbolic distance sigma * rho(z1, z2): solvable
        const double sigma = rng.unit();
        const double rho = pseudohyperbolic(z1, z2);
        const Complex v = sigma * rho * rng.circle_point();
        const Complex w2 = (v + w1) / (1.0 + std::conj(w1) * v);

        const SchurFunction h = solve_two_point_pick(z1, w1, z2, w2);
        CHECK(std::abs(h(z1) - w1) <= 1e-9);
        CHECK(std::abs(h(z2) - w2) <= 1e-9);
        CHECK(h.boundary_sup(512) <= 1.0 + 1e-9);
    }
}

TEST_CASE("mobius_to_zero and Blaschke expression nodes") {
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        const Complex a = 0.95 * rng.unit_disc();
        const LinearFractional m = mobius_to_zero(a);
        CHECK(std::abs(eval_lf(m, a)) < 1e-14);
        CHECK(std::abs(std::abs(eval_lf(m, rng.circle_point())) - 1.0) < 1e-12);

        const SchurFunction b(ScalarExpr::blaschke(a, ScalarExpr::lambda()));
        CHECK(std::abs(b(a)) < 1e-14);
        CHECK(std::abs(b.boundary_sup(256) - 1.0) < 1e-10);
    }
}
