#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mu/errors.hpp"
#include "mu/interpolate.hpp"
#include "mu/json_io.hpp"
#include "mu/oracle.hpp"
#include "mu/rng.hpp"

using namespace mu;

TEST_CASE("interpolant for the origin target is the zero disc") {
    const TetraSchwarzProblem prob{0.37, {0.0, 0.0, 0.0}};
    const AnalyticDisc d = build_interpolant_tetra(prob);
    const InterpolantReport rep = verify_interpolant(d, prob.lambda0, prob.target);
    CHECK(rep.verified);
    for (const Complex& v : d.eval(Complex(0.3, 0.2)))
        CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("worked example: S2 disc through (0.3, 0, 0.2) at 0.6") {
    const TetraSchwarzProblem prob{0.6, {0.3, 0.0, 0.2}};
    const AnalyticDisc d = build_interpolant_tetra(prob);
    // the doubly-scaled point (0.5, 0, 0.555...) is exterior, so S1 must
    // have been rejected
    CHECK(d.strategy == "S2");

    const auto at0 = d.eval(0.0);
    for (const auto& v : at0) CHECK(std::abs(v) < 1e-13);
    const auto atL = d.eval(0.6);
    CHECK(std::abs(atL[0] - Complex(0.3)) < 1e-13);
    CHECK(std::abs(atL[1]) < 1e-13);
    CHECK(std::abs(atL[2] - Complex(0.2)) < 1e-13);

    const InterpolantReport rep = verify_interpolant(d, prob.lambda0, prob.target);
    CHECK(rep.verified);
    CHECK(rep.endpoint_err_lambda0 <= 1e-12);

    CHECK_THROWS_AS(build_interpolant_tetra({0.4, {0.3, 0.0, 0.2}}),
                    InfeasibleProblem);
}

TEST_CASE("verify_interpolant rejects a disc that exits the domain") {
    AnalyticDisc bad;
    bad.components = {ScalarExpr::lambda(), ScalarExpr::lambda(),
                      ScalarExpr::lambda()};
    bad.strategy = "manual";
    const InterpolantReport rep =
        verify_interpolant(bad, 0.5, TetraPoint{0.5, 0.5, 0.5});
    CHECK(rep.endpoint_err_0 <= 1e-12);
    CHECK(rep.endpoint_err_lambda0 <= 1e-12);
    CHECK(rep.worst_membership_margin < -1e-9);
    CHECK(!rep.verified);
}

TEST_CASE("verify_interpolant validates grid sizes and component counts") {
    AnalyticDisc d;
    d.components = {ScalarExpr::lambda(), ScalarExpr::lambda(),
                    ScalarExpr::lambda()};
    CHECK_THROWS_AS(verify_interpolant(d, 0.5, TetraPoint{0, 0, 0}, 4, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_interpolant(d, 0.5, SymPoint{0, 0}),
                    std::invalid_argument);
}

TEST_CASE("interpolant battery: feasible problems produce verified discs") {
    const auto pts = sample_tetra(300, 1001);
    int s1 = 0, s2 = 0, s3 = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rng rng(1100 + i);
        const double t = lempert_origin_tetra(pts[i]);
        const double lo =
            std::clamp(t + (1.0 - t) * rng.unit(), 1e-3, 1.0 - 1e-6);
        if (lo < t) continue;
        const TetraSchwarzProblem prob{lo * rng.circle_point(), pts[i]};
        const AnalyticDisc d = build_interpolant_tetra(prob);
        const InterpolantReport rep =
            verify_interpolant(d, prob.lambda0, prob.target);
        CHECK(rep.verified);
        CHECK(rep.endpoint_err_0 <= 1e-9);
        CHECK(rep.endpoint_err_lambda0 <= 1e-9);
        CHECK(rep.worst_membership_margin >= -1e-9);
        if (d.strategy == "S1") ++s1;
        else if (d.strategy == "S2") ++s2;
        else ++s3;
        if (d.strategy == "S2")
            CHECK(rep.endpoint_err_lambda0 <= 1e-12);
    }
    CHECK(s1 + s2 + s3 == 300);
    CHECK(s1 > 0);
    CHECK(s2 > 0);
}

TEST_CASE("S3 fallback builds verified discs when forced") {
    const auto pts = sample_tetra(60, 1003);
    int built = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rng rng(1200 + i);
        const double t = lempert_origin_tetra(pts[i]);
        const double lo =
            std::clamp(t + (1.0 - t) * (0.1 + 0.8 * rng.unit()), 1e-3, 1.0 - 1e-6);
        if (lo < t) continue;
        const TetraSchwarzProblem prob{lo * rng.circle_point(), pts[i]};
        AnalyticDisc d;
        try {
            d = build_interpolant_tetra(prob, kDefaultBand, "S3");
        } catch (const ConstructionIncomplete&) {
            continue;  // S3 requires the beta data; a few targets are trivial
        }
        CHECK(d.strategy == "S3");
        const InterpolantReport rep =
            verify_interpolant(d, prob.lambda0, prob.target);
        CHECK(rep.verified);
        ++built;
    }
    CHECK(built > 30);
}

TEST_CASE("g2 interpolant: worked example and gate") {
    const G2SchwarzProblem prob{0.6, {1.0, 0.25}};
    const AnalyticDisc psi = build_interpolant_g2(prob);
    REQUIRE(psi.is_g2());

    const auto at0 = psi.eval(0.0);
    CHECK(std::abs(at0[0]) < 1e-13);
    CHECK(std::abs(at0[1]) < 1e-13);
    const auto atL = psi.eval(0.6);
    CHECK(std::abs(atL[0] - Complex(1.0)) < 1e-12);
    CHECK(std::abs(atL[1] - Complex(0.25)) < 1e-12);

    const InterpolantReport rep = verify_interpolant(psi, prob.lambda0, prob.target);
    CHECK(rep.verified);

    CHECK_THROWS_AS(build_interpolant_g2({0.4, {1.0, 0.25}}), InfeasibleProblem);
}

TEST_CASE("g2 interpolants stay in the closed symmetrized bidisc") {
    const auto pts = sample_g2(150, 1005);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rng rng(1300 + i);
        const double t = lempert_origin_g2(pts[i]);
        const double lo =
            std::clamp(t + (1.0 - t) * rng.unit(), 1e-3, 1.0 - 1e-6);
        if (lo < t) continue;
        const G2SchwarzProblem prob{lo * rng.circle_point(), pts[i]};
        const AnalyticDisc psi = build_interpolant_g2(prob);
        const InterpolantReport rep =
            verify_interpolant(psi, prob.lambda0, prob.target);
        CHECK(rep.verified);
        // the two-component disc is g composed with the tetrablock disc
        for (double theta : {0.1, 2.0, 4.4}) {
            const auto v = psi.eval(0.97 * unit_phase(theta));
            CHECK(g2_overall_margin({v[0], v[1]}) >= -1e-9);
        }
    }
}

TEST_CASE("schur_matrix_witness: worked example") {
    const TetraSchwarzProblem prob{0.6, {0.3, 0.0, 0.2}};
    const AnalyticDisc d = build_interpolant_tetra(prob);
    const SchurMatrixWitness w = schur_matrix_witness(prob, d);
    CHECK(w.verified);
    CHECK(w.boundary_norm <= 1.0 + 1e-9);

    // F(0) = [[0, *], [0, 0]]
    const Matrix2 F0 = w.eval(0.0);
    CHECK(std::abs(F0.a11) < 1e-13);
    CHECK(std::abs(F0.a21) < 1e-13);
    CHECK(std::abs(F0.a22) < 1e-13);

    // F(lambda0) completes the target point
    const Matrix2 FL = w.eval(0.6);
    CHECK(std::abs(FL.a11 - Complex(0.3)) < 1e-12);
    CHECK(std::abs(FL.a22) < 1e-12);
    CHECK(std::abs(FL.det() - Complex(0.2)) < 1e-12);
}

TEST_CASE("schur_matrix_witness: triangular case and zero case") {
    {
        const TetraSchwarzProblem prob{0.8, {0.5, 0.5, 0.25}};
        const AnalyticDisc d = build_interpolant_tetra(prob);
        const SchurMatrixWitness w = schur_matrix_witness(prob, d);
        CHECK(w.verified);
        const Matrix2 FL = w.eval(0.8);
        CHECK(std::abs(FL.det() - Complex(0.25)) < 1e-12);
        CHECK(std::abs(FL.a11 - Complex(0.5)) < 1e-12);
        CHECK(std::abs(FL.a22 - Complex(0.5)) < 1e-12);
    }
    {
        const TetraSchwarzProblem prob{0.5, {0.0, 0.0, 0.0}};
        const AnalyticDisc d = build_interpolant_tetra(prob);
        const SchurMatrixWitness w = schur_matrix_witness(prob, d);
        CHECK(w.verified);
        CHECK(w.boundary_norm < 1e-12);
    }
}

TEST_CASE("schur_matrix_witness on random feasible problems") {
    const auto pts = sample_tetra(120, 1007);
    int verified = 0, total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rng rng(1400 + i);
        const double t = lempert_origin_tetra(pts[i]);
        const double lo =
            std::clamp(t + (1.0 - t) * rng.unit(), 1e-3, 1.0 - 1e-6);
        if (lo < t) continue;
        const TetraSchwarzProblem prob{lo * rng.circle_point(), pts[i]};
        const AnalyticDisc d = build_interpolant_tetra(prob);
        const SchurMatrixWitness w = schur_matrix_witness(prob, d);
        ++total;
        // endpoint structure always holds; contractivity is best-effort
        const Matrix2 F0 = w.eval(0.0);
        CHECK(std::abs(F0.a11) < 1e-11);
        CHECK(std::abs(F0.a21) < 1e-11);
        CHECK(std::abs(F0.a22) < 1e-11);
        const Matrix2 FL = w.eval(prob.lambda0);
        CHECK(std::abs(FL.a11 - pts[i].x1) < 1e-10);
        CHECK(std::abs(FL.a22 - pts[i].x2) < 1e-10);
        CHECK(std::abs(FL.det() - pts[i].x3) < 1e-10);
        if (w.verified) {
            ++verified;
            CHECK(w.boundary_norm <= 1.0 + 1e-9);
        }
    }
    CHECK(total > 60);
    // the completion family is expressive enough in practice
    CHECK(verified >= total * 95 / 100);
}

TEST_CASE("disc JSON round trip reproduces margins exactly") {
    const auto pts = sample_tetra(40, 1009);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rng rng(1500 + i);
        const double t = lempert_origin_tetra(pts[i]);
        const double lo =
            std::clamp(t + (1.0 - t) * rng.unit(), 1e-3, 1.0 - 1e-6);
        if (lo < t) continue;
        const TetraSchwarzProblem prob{lo * rng.circle_point(), pts[i]};
        const AnalyticDisc d = build_interpolant_tetra(prob);
        const InterpolantReport before =
            verify_interpolant(d, prob.lambda0, prob.target);

        const Json j = to_json(d);
        const AnalyticDisc back = disc_from_json(Json::parse(j.dump()));
        const InterpolantReport after =
            verify_interpolant(back, prob.lambda0, prob.target);

        CHECK(after.verified == before.verified);
        CHECK(std::abs(after.worst_membership_margin -
                       before.worst_membership_margin) <= 1e-12);
        CHECK(std::abs(after.endpoint_err_lambda0 - before.endpoint_err_lambda0) <=
              1e-12);
    }
}

TEST_CASE("expression JSON rejects malformed trees") {
    CHECK_THROWS_AS(expr_from_json(Json::parse("{\"type\":\"pow\"}")),
                    MalformedInput);
    CHECK_THROWS_AS(expr_from_json(Json::parse("{\"type\":\"const\"}")),
                    MalformedInput);
    CHECK_THROWS_AS(expr_from_json(Json::parse("{\"type\":\"add\",\"lhs\":{\"type\":\"lambda\"}}")),
                    MalformedInput);
    CHECK_THROWS_AS(disc_from_json(Json::parse("{\"components\":[]}")),
                    MalformedInput);
    CHECK_THROWS_AS(complex_from_json(Json::parse("[1.0]")), MalformedInput);
}
