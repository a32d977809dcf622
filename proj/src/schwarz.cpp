#include "mu/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mu/errors.hpp"

namespace mu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double slack(const ExtReal& v, double bound) { return v.slack_below(bound); }

// Gate on the either/or branches. At an exact tie both fire (OR'ed).
struct Gates {
    bool first;   // |b| <= |a|
    bool second;  // |a| <= |b|
};

Gates branch_gates(const TetraPoint& x) {
    const double aa = std::abs(x.x1), ab = std::abs(x.x2);
    return {ab <= aa, aa <= ab};
}

Branch fired(const Gates& g) {
    if (g.first && g.second) return Branch::Both;
    if (g.first) return Branch::First;
    return Branch::Second;
}

struct BranchMargins {
    double m1 = -kInf, m2 = -kInf;
    bool defined1 = true, defined2 = true;
};

// Combine branch margins under the gates: margin of an OR is the max over
// fired branches. Undefined only if every fired branch is undefined.
ConditionVerdict gated(const std::string& id, const Gates& g,
                       const BranchMargins& bm, double band) {
    double m = -kInf;
    bool any_defined = false;
    if (g.first && bm.defined1) {
        m = std::max(m, bm.m1);
        any_defined = true;
    }
    if (g.second && bm.defined2) {
        m = std::max(m, bm.m2);
        any_defined = true;
    }
    ConditionVerdict v;
    v.id = id;
    v.branch = fired(g);
    v.defined = any_defined;
    v.margin = m;
    v.verdict = region_from_margin(m, band);
    if (!any_defined) {
        // deferred: keep a neutral margin for reporting
        v.margin = 0.0;
        v.verdict = Region::Boundary;
    }
    return v;
}

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::None: return "none";
        case Branch::First: return "first";
        case Branch::Second: return "second";
        case Branch::Both: return "both";
    }
    return "?";
}

const ConditionVerdict* ConditionReport::find(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return &c;
    return nullptr;
}

ConditionReport tetra_feasibility(const TetraSchwarzProblem& prob, double band) {
    const Complex lambda0 = prob.lambda0;
    const TetraPoint& x = prob.target;
    const Complex a = x.x1, b = x.x2, p = x.x3;
    const double L = std::abs(lambda0);
    if (L <= kDenomFloor)
        throw std::invalid_argument("tetra_feasibility: lambda0 must be nonzero");

    ConditionReport rep;
    if (L >= 1.0 - band) {
        rep.hypothesis_ok = false;
        rep.notes.push_back("lambda0 not strictly inside the unit disc");
    }
    if (tetra_overall_margin(x) <= band) {
        rep.hypothesis_ok = false;
        rep.notes.push_back("target point not strictly inside the tetrablock");
    }

    const ExtReal D1 = d_norm(x);          // ||Psi(., x)||
    const ExtReal D2 = d_norm(swap12(x));  // ||Upsilon(., x)||
    const Gates g = branch_gates(x);

    // branch-rescaled points: the pencil conditions reduce to membership of these
    const TetraPoint y1{a / lambda0, b, p / lambda0};
    const TetraPoint y2{a, b / lambda0, p / lambda0};

    // (2): max of the two closed-form quotients
    const double m2 = std::min(slack(D1, L), slack(D2, L));
    rep.margin = m2;
    rep.feasible = region_from_margin(m2, band);
    {
        ConditionVerdict v{"2", rep.feasible, m2, Branch::Both, true};
        rep.conditions.push_back(v);
    }

    // (3): branch-gated quotients
    rep.conditions.push_back(
        gated("3", g, {slack(D1, L), slack(D2, L), true, true}, band));

    // (4): Schur-class 2x2 witness exists iff the gated rescaled point admits
    // a contractive completion; evaluated through the balanced symmetric
    // completion and its singular values.
    {
        BranchMargins bm;
        bm.m1 = 1.0 - matrix_completion(y1, true).A.op_norm();
        bm.m2 = 1.0 - matrix_completion(y2, true).A.op_norm();
        rep.conditions.push_back(gated("4", g, bm, band));
    }

    // (5): same bounds through d_norm on x and swap(x)
    rep.conditions.push_back(
        gated("5", g, {slack(D1, L), slack(D2, L), true, true}, band));

    // (6): torus quadratic forms
    {
        const double L2 = L * L;
        const double lhs1 = std::norm(a) - L2 * std::norm(b) + std::norm(p) +
                            2.0 * std::abs(L2 * b - std::conj(a) * p);
        const double lhs2 = std::norm(b) - L2 * std::norm(a) + std::norm(p) +
                            2.0 * std::abs(L2 * a - std::conj(b) * p);
        rep.conditions.push_back(gated("6", g, {L2 - lhs1, L2 - lhs2, true, true}, band));
    }

    // (7): pencil nonvanishing on the open bidisc, decided analytically via
    // membership of the rescaled point
    rep.conditions.push_back(gated(
        "7", g, {tetra_overall_margin(y1), tetra_overall_margin(y2), true, true},
        band));

    // (8)
    {
        const double L2 = L * L;
        const double lhs1 = L * std::abs(a - std::conj(b) * p) +
                            std::abs(L2 * b - std::conj(a) * p) + std::norm(p);
        const double lhs2 = L * std::abs(b - std::conj(a) * p) +
                            std::abs(L2 * a - std::conj(b) * p) + std::norm(p);
        rep.conditions.push_back(gated("8", g, {L2 - lhs1, L2 - lhs2, true, true}, band));
    }

    // (9): |p| <= |lambda0| plus the quadratic form, per branch
    {
        const double L2 = L * L;
        const double pg = L - std::abs(p);
        const double lhs1 = std::norm(a) + L2 * std::norm(b) - std::norm(p) +
                            2.0 * L * std::abs(a * b - p);
        const double lhs2 = std::norm(b) + L2 * std::norm(a) - std::norm(p) +
                            2.0 * L * std::abs(a * b - p);
        rep.conditions.push_back(gated(
            "9", g, {std::min(pg, L2 - lhs1), std::min(pg, L2 - lhs2), true, true},
            band));
    }

    // (10): beta pair for the gated rescaled point
    {
        const double pg = L - std::abs(p);
        BranchMargins bm;
        auto beta_margin = [&](const TetraPoint& y, bool& defined,
                               std::optional<BetaPair>& out) {
            const double ay3 = std::abs(y.x3);
            if (ay3 > 1.0 + band) {
                defined = true;
                return std::min(pg, 1.0 - ay3);  // gate fails decisively
            }
            if (ay3 >= 1.0 - kTorusGuard) {
                defined = false;  // canonical formula singular; defer
                return 0.0;
            }
            const BetaPair bp = beta_decompose(y);
            out = bp;
            return std::min(pg, 1.0 - bp.abs_sum());
        };
        std::optional<BetaPair> b1, b2;
        bm.m1 = beta_margin(y1, bm.defined1, b1);
        bm.m2 = beta_margin(y2, bm.defined2, b2);
        ConditionVerdict v = gated("10", g, bm, band);
        rep.conditions.push_back(v);
        if (rep.feasible != Region::Exterior) {
            if (g.first && bm.defined1 && b1 && bm.m1 >= -band) {
                rep.beta = b1;
                rep.beta_branch = Branch::First;
            } else if (g.second && bm.defined2 && b2 && bm.m2 >= -band) {
                rep.beta = b2;
                rep.beta_branch = Branch::Second;
            }
        }
    }

    if (rep.feasible != Region::Exterior)
        rep.matrix_target = matrix_completion(x, true).A;
    return rep;
}

ConditionReport g2_feasibility(const G2SchwarzProblem& prob, double band) {
    const Complex lambda0 = prob.lambda0;
    const Complex s = prob.target.s, p = prob.target.p;
    const double L = std::abs(lambda0);
    if (L <= kDenomFloor)
        throw std::invalid_argument("g2_feasibility: lambda0 must be nonzero");

    ConditionReport rep;
    if (L >= 1.0 - band) {
        rep.hypothesis_ok = false;
        rep.notes.push_back("lambda0 not strictly inside the unit disc");
    }
    if (g2_overall_margin(prob.target, band) <= band) {
        rep.hypothesis_ok = false;
        rep.notes.push_back("target point not strictly inside the symmetrized bidisc");
    }

    const double L2 = L * L;
    const double den = (2.0 - std::abs(s)) * (2.0 + std::abs(s));  // 4 - |s|^2

    auto push = [&](const char* id, double margin, bool defined = true,
                    Branch br = Branch::Both) {
        rep.conditions.push_back(
            {id, region_from_margin(margin, band), margin, br, defined});
        if (!defined) {
            rep.conditions.back().margin = 0.0;
            rep.conditions.back().verdict = Region::Boundary;
        }
    };

    // (2): (2|s - conj(s) p| + |s^2 - 4p|) / (4 - |s|^2) <= |lambda0|
    double m2;
    if (den <= 0.0) {
        m2 = -kInf;
    } else {
        m2 = L - (2.0 * std::abs(s - std::conj(s) * p) + std::abs(s * s - 4.0 * p)) / den;
    }
    rep.margin = m2;
    rep.feasible = region_from_margin(m2, band);
    push("2", m2);

    // the f-image and its branch rescalings (a = b = s/2, so both branch
    // gates of the tetrablock conditions fire)
    const TetraPoint fx = embed_f(prob.target);
    const TetraPoint y1{fx.x1 / lambda0, fx.x2, fx.x3 / lambda0};
    const TetraPoint y2{fx.x1, fx.x2 / lambda0, fx.x3 / lambda0};

    // (3): Schur-class 2x2 witness via contractive completion of the
    // rescaled f-image
    {
        const double mm = std::max(1.0 - matrix_completion(y1, true).A.op_norm(),
                                   1.0 - matrix_completion(y2, true).A.op_norm());
        push("3", mm);
    }

    // (4): ||Psi(., (s/2, s/2, p))|| <= |lambda0|
    push("4", d_norm(fx).slack_below(L));

    // (5): (1 - L^2)|s|^2 + 4|p|^2 + 4| L^2 s - conj(s) p | <= 4 L^2
    {
        const double lhs = (1.0 - L2) * std::norm(s) + 4.0 * std::norm(p) +
                           4.0 * std::abs(L2 * s - std::conj(s) * p);
        push("5", 4.0 * L2 - lhs);
    }

    // (6): pencil 2 lambda0 - (z + lambda0 w) s + 2 p z w nonvanishing,
    // via membership of the rescaled f-image (both branch forms)
    push("6", std::max(tetra_overall_margin(y1), tetra_overall_margin(y2)));

    // (7): L |s - conj(s) p| + |L^2 s - conj(s) p| + 2|p|^2 <= 2 L^2
    {
        const double lhs = L * std::abs(s - std::conj(s) * p) +
                           std::abs(L2 * s - std::conj(s) * p) + 2.0 * std::norm(p);
        push("7", 2.0 * L2 - lhs);
    }

    // (8): |p| <= L and (1 + L^2)|s|^2 - 4|p|^2 + 2L|s^2 - 4p| <= 4 L^2
    {
        const double lhs = (1.0 + L2) * std::norm(s) - 4.0 * std::norm(p) +
                           2.0 * L * std::abs(s * s - 4.0 * p);
        push("8", std::min(L - std::abs(p), 4.0 * L2 - lhs));
    }

    // (9): |p| <= L and a beta pair with |b1| + |b2| <= 1 solving
    //   s = 2 b1 lambda0 + 2 conj(b2) p,  s lambda0 = 2 b2 lambda0 + 2 conj(b1) p
    // (the a = b specialization of the tetrablock condition (10); the two
    // branches coincide under b1 <-> b2).
    {
        const double pg = L - std::abs(p);
        const double ap = std::abs(p);
        if (ap > L + band * std::max(1.0, L)) {
            push("9", pg);
        } else if (std::abs(L - ap) <= kTorusGuard * std::max(1.0, L)) {
            push("9", 0.0, /*defined=*/false);
        } else {
            const double d = L2 - ap * ap;
            const Complex b1 =
                std::conj(lambda0) * (s - std::conj(s) * p) / (2.0 * d);
            const Complex b2 = (L2 * s - std::conj(s) * p) / (2.0 * d);
            const double mm = std::min(pg, 1.0 - (std::abs(b1) + std::abs(b2)));
            push("9", mm);
            if (rep.feasible != Region::Exterior && mm >= -band) {
                rep.beta = BetaPair{b1, b2};
                rep.beta_branch = Branch::Both;
            }
        }
    }

    // f-transfer cross-check: the tetrablock report on (s/2, s/2, p) must
    // agree outside the band
    {
        const ConditionReport tr = tetra_feasibility({lambda0, fx}, band);
        const bool opposite =
            (rep.margin > band && tr.margin < -band) ||
            (rep.margin < -band && tr.margin > band);
        rep.tetra_agrees = !opposite;
        if (opposite)
            rep.notes.push_back("f-transfer disagreement with tetra_feasibility");
    }

    if (rep.feasible != Region::Exterior)
        rep.matrix_target = matrix_completion(fx, true).A;
    return rep;
}

double lempert_origin_tetra(const TetraPoint& x, double band) {
    if (tetra_overall_margin(x) < -band)
        throw OutsideDomain("lempert_origin_tetra: point outside the closed tetrablock");
    const ExtReal d1 = d_norm(x), d2 = d_norm(swap12(x));
    if (d1.infinite || d2.infinite)
        throw OutsideDomain("lempert_origin_tetra: Psi norm infinite");
    return std::max(d1.value, d2.value);
}

double lempert_origin_g2(const SymPoint& y, double band) {
    if (g2_overall_margin(y, band) < -band)
        throw OutsideDomain("lempert_origin_g2: point outside the closed symmetrized bidisc");
    const double den = (2.0 - std::abs(y.s)) * (2.0 + std::abs(y.s));
    if (den <= 0.0)
        throw OutsideDomain("lempert_origin_g2: |s| >= 2");
    return (2.0 * std::abs(y.s - std::conj(y.s) * y.p) +
            std::abs(y.s * y.s - 4.0 * y.p)) / den;
}

BetaWitness condition10_witness(const TetraSchwarzProblem& prob, double band) {
    const ConditionReport rep = tetra_feasibility(prob, band);
    if (rep.feasible == Region::Exterior)
        throw InfeasibleProblem("condition10_witness: problem is infeasible");
    const double L = std::abs(prob.lambda0);
    if (std::abs(prob.target.x3) > L + band * std::max(1.0, L))
        throw InfeasibleProblem("condition10_witness: |p| > |lambda0|");

    const Complex a = prob.target.x1, b = prob.target.x2, p = prob.target.x3;
    const bool first = std::abs(b) <= std::abs(a);
    const TetraPoint y = first
        ? TetraPoint{a / prob.lambda0, b, p / prob.lambda0}
        : TetraPoint{a, b / prob.lambda0, p / prob.lambda0};
    return {beta_decompose(y), first ? Branch::First : Branch::Second};
}

}  // namespace mu
