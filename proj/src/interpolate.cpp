#include "mu/interpolate.hpp"

#include <cmath>
#include <sstream>

#include "mu/errors.hpp"

namespace mu {

std::vector<Complex> AnalyticDisc::eval(const Complex& lambda) const {
    std::vector<Complex> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c(lambda));
    return out;
}

namespace {

ScalarExpr lam() { return ScalarExpr::lambda(); }
ScalarExpr cst(const Complex& c) { return ScalarExpr::constant(c); }

AnalyticDisc make_disc(ScalarExpr c1, ScalarExpr c2, ScalarExpr c3,
                       const char* strategy) {
    AnalyticDisc d;
    d.components = {std::move(c1), std::move(c2), std::move(c3)};
    d.strategy = strategy;
    return d;
}

// S1: doubly-scaled constant disc (l c1, l c2, l^2 c3).
bool try_s1(const Complex& lambda0, const TetraPoint& x, AnalyticDisc& out) {
    const Complex c1 = x.x1 / lambda0;
    const Complex c2 = x.x2 / lambda0;
    const Complex c3 = x.x3 / (lambda0 * lambda0);
    if (tetra_overall_margin({c1, c2, c3}) < -1e-12) return false;
    out = make_disc(ScalarExpr::mul(cst(c1), lam()),
                    ScalarExpr::mul(cst(c2), lam()),
                    ScalarExpr::mul(cst(c3), ScalarExpr::mul(lam(), lam())), "S1");
    return true;
}

// The beta-disc shape shared by S2 and S3:
//   phi(l) = ( l (b1 + conj(b2) zeta(l)), b2 + conj(b1) zeta(l), l zeta(l) )
AnalyticDisc beta_disc(const BetaPair& beta, const ScalarExpr& zeta,
                       const char* strategy) {
    ScalarExpr c1 = ScalarExpr::mul(
        lam(), ScalarExpr::add(cst(beta.beta1),
                               ScalarExpr::mul(cst(std::conj(beta.beta2)), zeta)));
    ScalarExpr c2 = ScalarExpr::add(
        cst(beta.beta2), ScalarExpr::mul(cst(std::conj(beta.beta1)), zeta));
    ScalarExpr c3 = ScalarExpr::mul(lam(), zeta);
    return make_disc(std::move(c1), std::move(c2), std::move(c3), strategy);
}

struct BetaData {
    bool usable = false;
    BetaPair beta;
    Complex zeta0;   // forced value at 0: -b2 / conj(b1)
    Complex target;  // forced value at lambda0: p / lambda0
    bool trivial = false;  // b1 = b2 = 0
};

BetaData s2_data(const Complex& lambda0, const TetraPoint& x, double band) {
    BetaData d;
    const TetraPoint y{x.x1 / lambda0, x.x2, x.x3 / lambda0};
    if (std::abs(y.x3) >= 1.0 - kTorusGuard) return d;  // beta singular
    const BetaPair beta = beta_decompose(y);
    if (beta.abs_sum() > 1.0 + 1e-9) return d;  // not a certificate
    d.beta = beta;
    d.target = x.x3 / lambda0;
    if (std::abs(beta.beta1) < 1e-13 && std::abs(beta.beta2) < 1e-13) {
        d.trivial = true;
        d.usable = true;
        return d;
    }
    if (std::abs(beta.beta2) > std::abs(beta.beta1)) return d;  // zeta0 outside
    d.zeta0 = -beta.beta2 / std::conj(beta.beta1);
    d.usable = true;
    (void)band;
    return d;
}

bool try_s2(const Complex& lambda0, const TetraPoint& x, double band,
            AnalyticDisc& out) {
    const BetaData d = s2_data(lambda0, x, band);
    if (!d.usable) return false;
    if (d.trivial) {
        if (std::abs(d.target) > 1.0 + 1e-12) return false;
        out = make_disc(cst(0.0), cst(0.0),
                        ScalarExpr::mul(cst(d.target), lam()), "S2");
        return true;
    }
    if (std::abs(d.target) >= 1.0 - 1e-12) {
        // boundary target: only the constant function can reach it
        if (std::abs(d.zeta0 - d.target) > 1e-11) return false;
        out = beta_disc(d.beta, cst(d.target), "S2");
        return true;
    }
    try {
        const SchurFunction zeta =
            solve_two_point_pick(0.0, d.zeta0, lambda0, d.target);
        out = beta_disc(d.beta, zeta.expr(), "S2");
        return true;
    } catch (const PickInfeasible&) {
        return false;
    }
}

// S3: zeta = m_{-zeta0}( e^{i theta} l m_c(l) ), a two-parameter Blaschke
// product with exact value zeta0 at 0; (theta, c) fitted by coordinate
// descent so zeta(lambda0) hits the target.
bool try_s3(const Complex& lambda0, const TetraPoint& x, double band,
            AnalyticDisc& out) {
    const BetaData d = s2_data(lambda0, x, band);
    if (!d.usable || d.trivial) return false;
    if (std::abs(d.zeta0) >= 1.0 - 1e-12) return false;
    if (std::abs(d.target) >= 1.0 - 1e-12) return false;

    const double L = std::abs(lambda0);
    const Complex u_target =
        (d.target - d.zeta0) / (1.0 - std::conj(d.zeta0) * d.target);

    auto zeta_at_l0 = [&](double theta, double rc, double ac) {
        const Complex c = rc * unit_phase(ac);
        const Complex inner = unit_phase(theta) * lambda0 *
                              ((lambda0 - c) / (1.0 - std::conj(c) * lambda0));
        return (inner + d.zeta0) / (1.0 + std::conj(d.zeta0) * inner);
    };
    auto err = [&](double theta, double rc, double ac) {
        return std::abs(zeta_at_l0(theta, rc, ac) - d.target);
    };

    // init: exact when the data is Schwarz-Pick feasible
    double mu_ratio = std::abs(u_target) / L;
    if (mu_ratio > 1.0) mu_ratio = 1.0 - 1e-12;
    double t = (L - mu_ratio) / (1.0 - mu_ratio * L);
    double ac = std::arg(lambda0);
    double rc = std::abs(t);
    if (t < 0.0) ac += M_PI;
    rc = std::min(rc, 1.0 - 1e-9);
    const Complex c0 = rc * unit_phase(ac);
    const Complex raw = lambda0 * ((lambda0 - c0) / (1.0 - std::conj(c0) * lambda0));
    double theta = std::arg(u_target) - std::arg(raw);

    auto golden_min = [](auto f, double lo, double hi, int iters) {
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        for (int i = 0; i < iters; ++i) {
            if (f1 > f2) {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = f(x1);
            }
        }
        return 0.5 * (lo + hi);
    };

    for (int sweep = 0; sweep < 4; ++sweep) {
        const double span = 0.5 / (1 << sweep);
        theta = golden_min([&](double v) { return err(v, rc, ac); },
                           theta - span * M_PI, theta + span * M_PI, 48);
        rc = golden_min([&](double v) { return err(theta, v, ac); },
                        std::max(0.0, rc - span), std::min(1.0 - 1e-9, rc + span), 48);
        ac = golden_min([&](double v) { return err(theta, rc, v); },
                        ac - span * M_PI, ac + span * M_PI, 48);
    }
    if (err(theta, rc, ac) > 5e-10) return false;

    const Complex c = rc * unit_phase(ac);
    ScalarExpr inner = ScalarExpr::mul(
        cst(unit_phase(theta)), ScalarExpr::mul(lam(), ScalarExpr::blaschke(c, lam())));
    ScalarExpr zeta = ScalarExpr::blaschke(-d.zeta0, inner);
    out = beta_disc(d.beta, zeta, "S3");
    return true;
}

AnalyticDisc swap_components(AnalyticDisc d) {
    std::swap(d.components[0], d.components[1]);
    d.swapped = true;
    return d;
}

}  // namespace

AnalyticDisc build_interpolant_tetra(const TetraSchwarzProblem& prob, double band,
                                     const std::string& strategies) {
    const ConditionReport rep = tetra_feasibility(prob, band);
    if (rep.feasible == Region::Exterior)
        throw InfeasibleProblem("build_interpolant_tetra: problem is infeasible");

    // S0: normalize to |a| >= |b|; build and swap back
    const TetraPoint& x = prob.target;
    const bool swap = std::abs(x.x1) < std::abs(x.x2);
    const TetraPoint xr = swap ? swap12(x) : x;

    std::ostringstream diag;
    auto verified = [&](const AnalyticDisc& d) {
        const AnalyticDisc probe = swap ? swap_components(d) : d;
        const InterpolantReport r =
            verify_interpolant(probe, prob.lambda0, x, 64, 64, band);
        if (!r.verified)
            diag << " [" << d.strategy << ": err0=" << r.endpoint_err_0
                 << " errL=" << r.endpoint_err_lambda0
                 << " margin=" << r.worst_membership_margin << "]";
        return r.verified;
    };
    auto allowed = [&strategies](const char* name) {
        return strategies.find(name) != std::string::npos;
    };

    AnalyticDisc d;
    if (allowed("S1") && try_s1(prob.lambda0, xr, d) && verified(d))
        return swap ? swap_components(d) : d;
    if (allowed("S2") && try_s2(prob.lambda0, xr, band, d) && verified(d))
        return swap ? swap_components(d) : d;
    if (allowed("S3") && try_s3(prob.lambda0, xr, band, d) && verified(d))
        return swap ? swap_components(d) : d;

    throw ConstructionIncomplete(
        "build_interpolant_tetra: no strategy produced a verified disc" +
        diag.str());
}

AnalyticDisc build_interpolant_g2(const G2SchwarzProblem& prob, double band,
                                  const std::string& strategies) {
    const ConditionReport rep = g2_feasibility(prob, band);
    if (rep.feasible == Region::Exterior)
        throw InfeasibleProblem("build_interpolant_g2: problem is infeasible");

    const TetraPoint fx = embed_f(prob.target);
    const AnalyticDisc phi =
        build_interpolant_tetra({prob.lambda0, fx}, band, strategies);

    AnalyticDisc psi;
    psi.components = {ScalarExpr::add(phi.components[0], phi.components[1]),
                      phi.components[2]};
    psi.strategy = phi.strategy;
    psi.swapped = phi.swapped;
    return psi;
}

namespace {

// nr radii clustered toward 1 (last radius exactly 1), na angles
template <typename MarginFn>
InterpolantReport verify_impl(const AnalyticDisc& disc, const Complex& lambda0,
                              const std::vector<Complex>& target, int nr, int na,
                              MarginFn&& margin_of) {
    if (nr < 8 || na < 8 || nr * na < 64)
        throw std::invalid_argument("verify_interpolant: grid too small");

    InterpolantReport rep;
    rep.grid_radii = nr;
    rep.grid_angles = na;

    const auto at0 = disc.eval(0.0);
    for (const auto& v : at0)
        rep.endpoint_err_0 = std::max(rep.endpoint_err_0, std::abs(v));
    const auto atL = disc.eval(lambda0);
    for (std::size_t i = 0; i < target.size(); ++i)
        rep.endpoint_err_lambda0 =
            std::max(rep.endpoint_err_lambda0, std::abs(atL[i] - target[i]));

    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nr; ++i) {
        const double r = std::sin(0.5 * M_PI * (i + 1) / nr);
        for (int j = 0; j < na; ++j) {
            const Complex l = r * unit_phase(2.0 * M_PI * j / na);
            worst = std::min(worst, margin_of(disc.eval(l)));
        }
    }
    rep.worst_membership_margin = worst;
    rep.verified = rep.endpoint_err_0 <= kSchurTol &&
                   rep.endpoint_err_lambda0 <= kSchurTol && worst >= -kSchurTol;
    return rep;
}

}  // namespace

InterpolantReport verify_interpolant(const AnalyticDisc& disc,
                                     const Complex& lambda0, const TetraPoint& x,
                                     int nr, int na, double band) {
    if (disc.components.size() != 3)
        throw std::invalid_argument("verify_interpolant: expected a 3-component disc");
    (void)band;
    return verify_impl(disc, lambda0, {x.x1, x.x2, x.x3}, nr, na,
                       [](const std::vector<Complex>& v) {
                           return tetra_overall_margin({v[0], v[1], v[2]});
                       });
}

InterpolantReport verify_interpolant(const AnalyticDisc& disc,
                                     const Complex& lambda0, const SymPoint& y,
                                     int nr, int na, double band) {
    if (disc.components.size() != 2)
        throw std::invalid_argument("verify_interpolant: expected a 2-component disc");
    return verify_impl(disc, lambda0, {y.s, y.p}, nr, na,
                       [band](const std::vector<Complex>& v) {
                           return g2_overall_margin({v[0], v[1]}, band);
                       });
}

Matrix2 SchurMatrixWitness::eval(const Complex& lambda) const {
    return {f11(lambda), f12(lambda), f21(lambda), f22(lambda)};
}

SchurMatrixWitness schur_matrix_witness(const TetraSchwarzProblem& prob,
                                        const AnalyticDisc& disc,
                                        int boundary_grid) {
    if (disc.components.size() != 3)
        throw std::invalid_argument("schur_matrix_witness: expected a tetrablock disc");

    const Complex a = prob.target.x1, b = prob.target.x2, p = prob.target.x3;
    SchurMatrixWitness w;
    w.f11 = disc.components[0];
    w.f22 = disc.components[1];

    const Complex q0 = a * b - p;

    auto boundary_norm = [&](const SchurMatrixWitness& cand) {
        return circle_sup(
            [&cand](const Complex& z) { return cand.eval(z).op_norm(); },
            boundary_grid);
    };

    if (std::abs(q0) <= 1e-12 * (1.0 + std::abs(a * b))) {
        // triangular case: det F = f11 f22 already hits p at lambda0
        w.f12 = ScalarExpr::constant(0.0);
        w.f21 = ScalarExpr::constant(0.0);
        w.boundary_norm = boundary_norm(w);
        w.verified = w.boundary_norm <= 1.0 + kSchurTol;
        if (!w.verified) w.note = "triangular completion exceeds the unit ball";
        return w;
    }

    // Sandwich family diag(1, l) G diag(l, 1) with the constant balanced
    // completion G of (a/l0, b/l0, p/l0^2): contractive by construction
    // whenever that point lies in the closed tetrablock, and its diagonal
    // equals the disc components exactly when the disc is the doubly-scaled
    // one. det F = phi3 identically.
    {
        const Complex l0 = prob.lambda0;
        const TetraPoint c{a / l0, b / l0, p / (l0 * l0)};
        const Matrix2 G = matrix_completion(c, true).A;
        if (G.op_norm() <= 1.0 + kSchurTol) {
            auto lam = [] { return ScalarExpr::lambda(); };
            SchurMatrixWitness s;
            s.f11 = ScalarExpr::mul(lam(), ScalarExpr::constant(G.a11));
            s.f12 = ScalarExpr::constant(G.a12);
            s.f21 = ScalarExpr::mul(ScalarExpr::mul(lam(), lam()),
                                    ScalarExpr::constant(G.a21));
            s.f22 = ScalarExpr::mul(lam(), ScalarExpr::constant(G.a22));
            // keep the disc-diagonal contract: only usable when the disc
            // components are the doubly-scaled ones
            double diag_gap = 0.0;
            for (const Complex probe :
                 {Complex(0.31, 0.2), Complex(-0.77, 0.1), 0.5 * l0}) {
                const auto v = disc.eval(probe);
                diag_gap = std::max(diag_gap, std::abs(v[0] - s.f11(probe)));
                diag_gap = std::max(diag_gap, std::abs(v[1] - s.f22(probe)));
            }
            if (diag_gap <= 1e-10) {
                s.boundary_norm = boundary_norm(s);
                s.verified = s.boundary_norm <= 1.0 + kSchurTol;
                if (s.verified) return s;
            }
        }
    }

    auto golden_best = [&](auto candidate, double lo, double hi) {
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
        double f1 = boundary_norm(candidate(t1));
        double f2 = boundary_norm(candidate(t2));
        for (int it = 0; it < 60; ++it) {
            if (f1 > f2) {
                lo = t1; t1 = t2; f1 = f2;
                t2 = lo + gr * (hi - lo);
                f2 = boundary_norm(candidate(t2));
            } else {
                hi = t2; t2 = t1; f2 = f1;
                t1 = hi - gr * (hi - lo);
                f1 = boundary_norm(candidate(t1));
            }
        }
        SchurMatrixWitness best = candidate(0.5 * (lo + hi));
        best.boundary_norm = boundary_norm(best);
        best.verified = best.boundary_norm <= 1.0 + kSchurTol;
        return best;
    };

    // Factored family for beta discs: with zeta = phi3 / lambda,
    //   phi1 phi2 - phi3 = lambda conj(b1 b2) (zeta - w-)(zeta - w+),
    // the roots w-+ of conj(b1 b2) w^2 + (|b1|^2 + |b2|^2 - 1) w + b1 b2
    // having |w-| |w+| = 1. Splitting the factors across f12 and f21 keeps
    // det F = phi3 identically; a scalar balance is fitted on the boundary.
    if (disc.strategy == "S2" || disc.strategy == "S3") {
        const auto& root3 = *disc.components[2].root();
        ScalarExpr zeta;
        bool have_zeta = false;
        if (root3.kind == ScalarExpr::Kind::Mul) {
            if (root3.a->kind == ScalarExpr::Kind::Lambda) {
                zeta = ScalarExpr::from_root(root3.b);
                have_zeta = true;
            } else if (root3.b->kind == ScalarExpr::Kind::Lambda) {
                zeta = ScalarExpr::from_root(root3.a);
                have_zeta = true;
            }
        }
        const Complex bb = disc.swapped ? a : b;
        const Complex aa = disc.swapped ? b : a;
        const TetraPoint y{aa / prob.lambda0, bb, p / prob.lambda0};
        if (have_zeta && std::abs(y.x3) < 1.0 - kTorusGuard) {
            const BetaPair beta = beta_decompose(y);
            const Complex prod = beta.beta1 * beta.beta2;
            if (std::abs(prod) > 1e-13) {
                const Complex mu = std::conj(prod);
                const double nu = std::norm(beta.beta1) + std::norm(beta.beta2) - 1.0;
                const double D =
                    std::sqrt(std::max(0.0, nu * nu - 4.0 * std::norm(prod)));
                const Complex w_in = (-nu - D) / (2.0 * mu);
                const Complex w_out = (-nu + D) / (2.0 * mu);
                auto candidate = [&](double logr) {
                    const double r = std::exp(logr);
                    SchurMatrixWitness c = w;
                    c.f12 = ScalarExpr::mul(
                        ScalarExpr::constant(mu / r),
                        ScalarExpr::add(zeta, ScalarExpr::constant(-w_out)));
                    c.f21 = ScalarExpr::mul(
                        ScalarExpr::lambda(),
                        ScalarExpr::mul(ScalarExpr::constant(r),
                                        ScalarExpr::add(zeta,
                                                        ScalarExpr::constant(-w_in))));
                    return c;
                };
                SchurMatrixWitness best =
                    golden_best(candidate, std::log(1e-3), std::log(1e3));
                if (best.verified) return best;
            }
        }
    }

    // f12 constant, f21 = l g with g chosen so det F(lambda0) = p;
    // |f12| balanced against |f21| by minimizing the boundary norm over log t
    auto candidate = [&](double logt) {
        const double t = std::exp(logt);
        SchurMatrixWitness c = w;
        c.f12 = ScalarExpr::constant(t);
        c.f21 = ScalarExpr::mul(ScalarExpr::lambda(),
                                ScalarExpr::constant(q0 / (t * prob.lambda0)));
        return c;
    };
    SchurMatrixWitness best = golden_best(candidate, std::log(1e-3), std::log(1e3));
    if (!best.verified)
        best.note = "no contractive completion found in the searched family";
    return best;
}

}  // namespace mu
