#include "mu/complex_core.hpp"

#include <cmath>

#include "mu/errors.hpp"

namespace mu {

namespace {

bool degenerate_psi(const TetraPoint& x) {
    return std::abs(x.x1 * x.x2 - x.x3) <= kDegenerateTol * (1.0 + std::abs(x.x3));
}

}  // namespace

LinearFractional psi_map(const TetraPoint& x) {
    LinearFractional f;
    if (degenerate_psi(x)) {
        f.constant_branch = true;
        f.constant_value = x.x1;
        // keep the coefficients anyway; they reduce to the same constant
    }
    f.alpha = x.x3;
    f.beta = -x.x1;
    f.gamma = x.x2;
    f.delta = -1.0;
    return f;
}

LinearFractional upsilon_map(const TetraPoint& x) {
    return psi_map(swap12(x));
}

LinearFractional mobius_to_zero(const Complex& a) {
    LinearFractional f;
    f.alpha = 1.0;
    f.beta = -a;
    f.gamma = -std::conj(a);
    f.delta = 1.0;
    return f;
}

Complex eval_lf(const LinearFractional& f, const Complex& z, double denom_floor) {
    if (f.constant_branch) return f.constant_value;
    const Complex den = f.gamma * z + f.delta;
    if (std::abs(den) <= denom_floor)
        throw DenominatorVanishes("linear-fractional denominator vanishes");
    return (f.alpha * z + f.beta) / den;
}

DiscImage psi_image_disc(const TetraPoint& x) {
    if (degenerate_psi(x)) return {x.x1, 0.0, true};
    if (std::abs(x.x2) < 1.0) {
        const double den = one_minus_abs_sq(x.x2);
        return {(x.x1 - std::conj(x.x2) * x.x3) / den,
                std::abs(x.x1 * x.x2 - x.x3) / den, false};
    }
    throw NormInfinite("Psi(., x) unbounded: |x2| >= 1 and x1 x2 != x3");
}

ExtReal d_norm(const TetraPoint& x) {
    if (std::abs(x.x2) < 1.0) {
        const double den = one_minus_abs_sq(x.x2);
        return ExtReal::of((std::abs(x.x1 - std::conj(x.x2) * x.x3) +
                            std::abs(x.x1 * x.x2 - x.x3)) / den);
    }
    if (degenerate_psi(x)) return ExtReal::of(std::abs(x.x1));
    return ExtReal::inf();
}

double circle_sup(const std::function<double(const Complex&)>& f, int n) {
    if (n < 16) n = 16;
    const double step = 2.0 * M_PI / n;
    double best = -1.0, best_theta = 0.0;
    for (int k = 0; k < n; ++k) {
        const double th = k * step;
        const double v = f(unit_phase(th));
        if (v > best) {
            best = v;
            best_theta = th;
        }
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best_theta - step, hi = best_theta + step;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(unit_phase(x1)), f2 = f(unit_phase(x2));
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(unit_phase(x2));
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(unit_phase(x1));
        }
    }
    return std::max(best, std::max(f1, f2));
}

double sup_norm_grid(const LinearFractional& f, int n) {
    if (n < 16) throw std::invalid_argument("sup_norm_grid: n must be >= 16");
    if (f.constant_branch) return std::abs(f.constant_value);
    // pole scan first so the refinement never runs on a singular bracket
    const double step = 2.0 * M_PI / n;
    for (int k = 0; k < n; ++k) {
        const Complex z = unit_phase(k * step);
        if (std::abs(f.gamma * z + f.delta) <= kDenomFloor)
            throw PoleOnBoundary("sup_norm_grid: pole on the torus grid");
    }
    return circle_sup(
        [&f](const Complex& z) { return std::abs(eval_lf(f, z)); }, n);
}

double pseudohyperbolic(const Complex& z, const Complex& w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
        throw OutsideDisc("pseudohyperbolic: arguments must lie in the open disc");
    // quotient of moduli (not modulus of the quotient) so that symmetry in
    // (z, w) is exact: the two denominators are conjugates
    return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
}

SchurFunction solve_two_point_pick(const Complex& z1, const Complex& w1,
                                   const Complex& z2, const Complex& w2,
                                   double tol) {
    if (std::abs(z1 - z2) <= kDenomFloor)
        throw std::invalid_argument("solve_two_point_pick: nodes coincide");
    const double rho_nodes = pseudohyperbolic(z1, z2);
    const double rho_targets = pseudohyperbolic(w1, w2);
    if (rho_targets > rho_nodes + tol)
        throw PickInfeasible("two-point Pick data violates the Schwarz-Pick bound");

    // Conjugate to g(0) = 0, g(u) = v and take the central solution g = (v/u) z.
    const Complex u = (z2 - z1) / (1.0 - std::conj(z1) * z2);
    const Complex v = (w2 - w1) / (1.0 - std::conj(w1) * w2);
    Complex scale = v / u;
    const double m = std::abs(scale);
    if (m > 1.0) scale /= m;  // clamp roundoff excess; within tol by the gate

    ScalarExpr inner = ScalarExpr::blaschke(z1, ScalarExpr::lambda());
    ScalarExpr scaled = ScalarExpr::mul(ScalarExpr::constant(scale), inner);
    return SchurFunction(ScalarExpr::blaschke(-w1, scaled));
}

}  // namespace mu
