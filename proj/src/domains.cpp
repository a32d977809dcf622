#include "mu/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mu/errors.hpp"

namespace mu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool degenerate_psi(const TetraPoint& x) {
    return std::abs(x.x1 * x.x2 - x.x3) <= kDegenerateTol * (1.0 + std::abs(x.x3));
}

}  // namespace

Region region_from_margin(double margin, double band) {
    if (margin > band) return Region::Interior;
    if (margin < -band) return Region::Exterior;
    return Region::Boundary;
}

const char* region_name(Region r) {
    switch (r) {
        case Region::Interior: return "interior";
        case Region::Boundary: return "boundary";
        case Region::Exterior: return "exterior";
    }
    return "?";
}

double Matrix2::frob_sq() const {
    return std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22);
}

double Matrix2::op_norm() const {
    const double f2 = frob_sq();
    const double d = std::abs(det());
    const double disc = std::max(0.0, f2 * f2 - 4.0 * d * d);
    return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

double Matrix2::min_sv() const {
    const double smax = op_norm();
    if (smax <= 0.0) return 0.0;
    return std::abs(det()) / smax;
}

const CriterionResult* MembershipVerdict::find(const std::string& id) const {
    for (const auto& c : per_criterion)
        if (c.id == id) return &c;
    return nullptr;
}

double tetra_overall_margin(const TetraPoint& x) {
    const double lhs = std::norm(x.x1) + std::norm(x.x2) - std::norm(x.x3) +
                       2.0 * std::abs(x.x1 * x.x2 - x.x3);
    return std::min(1.0 - lhs, 1.0 - std::abs(x.x3));
}

namespace {

// Criterion (2): ||Psi(., x)|| <= 1, with the degenerate side condition.
// When x1 x2 == x3 the map collapses to the constant x1 and the norm alone
// would pass points like (0, 2, 0); the side bound on |x2| restores the
// equivalence.
double criterion2_margin(const TetraPoint& x) {
    if (std::abs(x.x2) < 1.0) {
        const ExtReal d = d_norm(x);
        return 1.0 - d.value;  // finite on this branch
    }
    if (degenerate_psi(x))
        return std::min(1.0 - std::abs(x.x1), 1.0 - std::abs(x.x2));
    return -kInf;
}

double criterion3_margin(const TetraPoint& x) {
    return one_minus_abs_sq(x.x2) -
           (std::abs(x.x1 - std::conj(x.x2) * x.x3) + std::abs(x.x1 * x.x2 - x.x3));
}

double criterion4_margin(const TetraPoint& x) {
    const double lhs = std::norm(x.x1) - std::norm(x.x2) + std::norm(x.x3) +
                       2.0 * std::abs(x.x2 - std::conj(x.x1) * x.x3);
    return std::min(1.0 - lhs, 1.0 - std::abs(x.x2));
}

double criterion6_margin(const TetraPoint& x) {
    return one_minus_abs_sq(x.x3) -
           (std::abs(x.x1 - std::conj(x.x2) * x.x3) +
            std::abs(x.x2 - std::conj(x.x1) * x.x3));
}

}  // namespace

MembershipVerdict tetra_membership(const TetraPoint& x, double band,
                                   const std::vector<std::string>* criteria) {
    auto wanted = [&](const char* id) {
        return criteria == nullptr || criteria->empty() ||
               std::find(criteria->begin(), criteria->end(), id) != criteria->end();
    };

    MembershipVerdict v;
    v.margin = tetra_overall_margin(x);
    v.overall = region_from_margin(v.margin, band);

    auto push = [&](const char* id, double margin, bool defined = true) {
        v.per_criterion.push_back(
            {id, region_from_margin(margin, band), margin, defined});
    };

    if (wanted("2")) push("2", criterion2_margin(x));
    if (wanted("2p")) push("2p", criterion2_margin(swap12(x)));
    if (wanted("3")) push("3", criterion3_margin(x));
    if (wanted("3p")) push("3p", criterion3_margin(swap12(x)));
    if (wanted("4")) push("4", criterion4_margin(x));
    if (wanted("4p")) push("4p", criterion4_margin(swap12(x)));
    if (wanted("5")) push("5", tetra_overall_margin(x));
    if (wanted("6")) push("6", criterion6_margin(x));

    if (wanted("7")) {
        const CompletionResult c = matrix_completion(x, /*symmetric=*/false);
        push("7", 1.0 - c.A.op_norm());
    }
    std::optional<Matrix2> sym_completion;
    if (wanted("8")) {
        const CompletionResult c = matrix_completion(x, /*symmetric=*/true);
        sym_completion = c.A;
        v.completion_exceeds_ball = c.exceeds_ball;
        push("8", 1.0 - c.A.op_norm());
    }

    if (wanted("9")) {
        const double ax3 = std::abs(x.x3);
        if (ax3 > 1.0 + band) {
            push("9", 1.0 - ax3);
        } else if (ax3 >= 1.0 - kTorusGuard) {
            // canonical formula singular; defer to the other criteria
            push("9", 1.0 - ax3, /*defined=*/false);
        } else {
            const BetaPair b = beta_decompose(x);
            const double margin = std::min(1.0 - ax3, 1.0 - b.abs_sum());
            push("9", margin);
            if (v.overall != Region::Exterior) v.beta = b;
        }
    }

    if (v.overall != Region::Exterior && sym_completion)
        v.completion = sym_completion;
    return v;
}

BetaPair beta_decompose(const TetraPoint& x, double torus_tol) {
    const double ax3 = std::abs(x.x3);
    if (ax3 >= 1.0 - torus_tol)
        throw OnTorusX3("beta_decompose: |x3| within tolerance of 1");
    const double den = one_minus_abs_sq(x.x3);
    return {(x.x1 - std::conj(x.x2) * x.x3) / den,
            (x.x2 - std::conj(x.x1) * x.x3) / den};
}

CompletionResult matrix_completion(const TetraPoint& x, bool symmetric,
                                   double tol) {
    const Complex q = x.x1 * x.x2 - x.x3;
    Matrix2 A;
    A.a11 = x.x1;
    A.a22 = x.x2;
    if (symmetric) {
        const Complex root = std::sqrt(q);  // principal branch
        A.a12 = root;
        A.a21 = root;
    } else if (std::abs(q) <= kDenomFloor) {
        A.a12 = 0.0;
        A.a21 = 0.0;
    } else {
        // balance |a12| = |a21| by minimizing the norm over log t
        const Complex u = std::exp(Complex(0.0, 0.5 * std::arg(q)));
        auto norm_at = [&](double logt) {
            const double t = std::exp(logt);
            Matrix2 M{x.x1, t * u, q / (t * u), x.x2};
            return M.op_norm();
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double lo = std::log(1e-6), hi = std::log(1e6);
        double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
        double f1 = norm_at(t1), f2 = norm_at(t2);
        for (int it = 0; it < 90; ++it) {
            if (f1 > f2) {
                lo = t1; t1 = t2; f1 = f2;
                t2 = lo + gr * (hi - lo);
                f2 = norm_at(t2);
            } else {
                hi = t2; t2 = t1; f2 = f1;
                t1 = hi - gr * (hi - lo);
                f1 = norm_at(t1);
            }
        }
        const double t = std::exp(0.5 * (lo + hi));
        A.a12 = t * u;
        A.a21 = q / (t * u);
    }
    CompletionResult r{A, A.op_norm() > 1.0 + tol};
    return r;
}

std::pair<Complex, Complex> quadratic_roots(const Complex& s, const Complex& p) {
    const Complex sq = std::sqrt(s * s - 4.0 * p);
    // pick the non-cancelling branch, recover the partner from the product
    const Complex r1 = (std::abs(s + sq) >= std::abs(s - sq)) ? 0.5 * (s + sq)
                                                              : 0.5 * (s - sq);
    if (std::abs(r1) <= kDenomFloor) return {r1, s - r1};
    return {r1, p / r1};
}

namespace {

struct G2Margins {
    double beta_margin = 0.0;
    bool beta_defined = true;
    BetaPair beta;  // beta in beta1, beta2 unused (zero)
    double root_margin = 0.0;
    double overall = 0.0;
};

G2Margins g2_margins(const SymPoint& y, double band) {
    G2Margins m;
    const auto [r1, r2] = quadratic_roots(y.s, y.p);
    m.root_margin = 1.0 - std::max(std::abs(r1), std::abs(r2));

    const double ap = std::abs(y.p);
    if (ap > 1.0 + band) {
        m.beta_margin = 1.0 - ap;
    } else if (ap >= 1.0 - kTorusGuard) {
        m.beta_defined = false;
        m.beta_margin = 1.0 - ap;
    } else {
        const Complex beta = (y.s - std::conj(y.s) * y.p) / one_minus_abs_sq(y.p);
        m.beta = {beta, 0.0};
        m.beta_margin = std::min(1.0 - ap, 1.0 - std::abs(beta));
    }
    m.overall = m.beta_defined ? m.beta_margin : m.root_margin;
    return m;
}

}  // namespace

double g2_overall_margin(const SymPoint& y, double band) {
    return g2_margins(y, band).overall;
}

MembershipVerdict g2_membership(const SymPoint& y, double band) {
    const G2Margins m = g2_margins(y, band);
    MembershipVerdict v;
    v.margin = m.overall;
    v.overall = region_from_margin(v.margin, band);
    v.per_criterion.push_back({"beta", region_from_margin(m.beta_margin, band),
                               m.beta_margin, m.beta_defined});
    v.per_criterion.push_back(
        {"roots", region_from_margin(m.root_margin, band), m.root_margin, true});
    if (v.overall != Region::Exterior && m.beta_defined) v.beta = m.beta;
    return v;
}

TetraPoint embed_f(const SymPoint& y) { return {0.5 * y.s, 0.5 * y.s, y.p}; }

SymPoint project_g(const TetraPoint& x) { return {x.x1 + x.x2, x.x3}; }

TirthaResult tirtha_check(const TetraPoint& x, int n, double band) {
    if (n < 16) throw std::invalid_argument("tirtha_check: n must be >= 16");
    auto margin_at = [&](double theta) {
        const Complex z = unit_phase(theta);
        return g2_overall_margin({x.x1 + z * x.x2, z * x.x3}, band);
    };
    const double step = 2.0 * M_PI / n;
    double worst = kInf, worst_theta = 0.0;
    for (int k = 0; k < n; ++k) {
        const double th = k * step;
        const double m = margin_at(th);
        if (m < worst) {
            worst = m;
            worst_theta = th;
        }
    }
    // polish: exterior dips can be much narrower than the grid step
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = worst_theta - step, hi = worst_theta + step;
    double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
    double f1 = margin_at(t1), f2 = margin_at(t2);
    for (int it = 0; it < 80; ++it) {
        if (f1 > f2) {
            lo = t1; t1 = t2; f1 = f2;
            t2 = lo + gr * (hi - lo);
            f2 = margin_at(t2);
        } else {
            hi = t2; t2 = t1; f2 = f1;
            t1 = hi - gr * (hi - lo);
            f1 = margin_at(t1);
        }
    }
    double min_margin = worst;
    double min_theta = worst_theta;
    if (f1 < min_margin) { min_margin = f1; min_theta = t1; }
    if (f2 < min_margin) { min_margin = f2; min_theta = t2; }

    TirthaResult r;
    r.min_margin = min_margin;
    r.worst_z = unit_phase(min_theta);
    r.verdict = region_from_margin(min_margin, band);
    return r;
}

}  // namespace mu
