#include "mu/expr.hpp"

#include <cmath>

#include "mu/errors.hpp"
#include "mu/tolerances.hpp"

namespace mu {

ScalarExpr ScalarExpr::lambda() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Lambda;
    return from_root(n);
}

ScalarExpr ScalarExpr::constant(const Complex& c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = c;
    return from_root(n);
}

ScalarExpr ScalarExpr::add(const ScalarExpr& lhs, const ScalarExpr& rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Add;
    n->a = lhs.node_;
    n->b = rhs.node_;
    return from_root(n);
}

ScalarExpr ScalarExpr::mul(const ScalarExpr& lhs, const ScalarExpr& rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mul;
    n->a = lhs.node_;
    n->b = rhs.node_;
    return from_root(n);
}

ScalarExpr ScalarExpr::blaschke(const Complex& a, const ScalarExpr& inner) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Blaschke;
    n->value = a;
    n->a = inner.node_;
    return from_root(n);
}

ScalarExpr ScalarExpr::from_root(std::shared_ptr<const Node> n) {
    ScalarExpr e;
    e.node_ = std::move(n);
    return e;
}

namespace {

Complex eval_node(const ScalarExpr::Node& n, const Complex& lambda) {
    using Kind = ScalarExpr::Kind;
    switch (n.kind) {
        case Kind::Lambda: return lambda;
        case Kind::Const: return n.value;
        case Kind::Add: return eval_node(*n.a, lambda) + eval_node(*n.b, lambda);
        case Kind::Mul: return eval_node(*n.a, lambda) * eval_node(*n.b, lambda);
        case Kind::Blaschke: {
            const Complex g = eval_node(*n.a, lambda);
            const Complex den = 1.0 - std::conj(n.value) * g;
            if (std::abs(den) <= kDenomFloor)
                throw DenominatorVanishes("blaschke node denominator vanishes");
            return (g - n.value) / den;
        }
    }
    return {};
}

}  // namespace

Complex ScalarExpr::operator()(const Complex& lambda) const {
    return eval_node(*node_, lambda);
}

double SchurFunction::boundary_sup(int n) const {
    // grid max plus golden refinement of the winning bracket
    if (n < 16) n = 16;
    const double step = 2.0 * M_PI / n;
    double best = 0.0, best_theta = 0.0;
    for (int k = 0; k < n; ++k) {
        const double th = k * step;
        const double v = std::abs(expr_(unit_phase(th)));
        if (v > best) {
            best = v;
            best_theta = th;
        }
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = best_theta - step, hi = best_theta + step;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = std::abs(expr_(unit_phase(x1)));
    double f2 = std::abs(expr_(unit_phase(x2)));
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = std::abs(expr_(unit_phase(x2)));
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = std::abs(expr_(unit_phase(x1)));
        }
    }
    return std::max(best, std::max(f1, f2));
}

}  // namespace mu
