#pragma once

#include <memory>

#include "mu/complex.hpp"

namespace mu {

// Immutable expression tree over the coordinate lambda, constants, sums,
// products, and Blaschke-factor composition. This is the closed vocabulary
// for analytic-disc components and scalar Schur functions; it also defines
// the JSON wire format (node types "lambda", "const", "add", "mul",
// "blaschke").
class ScalarExpr {
  public:
    enum class Kind { Lambda, Const, Add, Mul, Blaschke };

    struct Node {
        Kind kind = Kind::Const;
        Complex value;                       // Const payload, Blaschke point
        std::shared_ptr<const Node> a, b;    // children
    };

    ScalarExpr() : node_(std::make_shared<Node>()) {}  // constant 0

    static ScalarExpr lambda();
    static ScalarExpr constant(const Complex& c);
    static ScalarExpr add(const ScalarExpr& lhs, const ScalarExpr& rhs);
    static ScalarExpr mul(const ScalarExpr& lhs, const ScalarExpr& rhs);
    // Blaschke factor (g - a) / (1 - conj(a) g) applied to an inner expression.
    static ScalarExpr blaschke(const Complex& a, const ScalarExpr& inner);

    Complex operator()(const Complex& lambda) const;

    const std::shared_ptr<const Node>& root() const { return node_; }
    static ScalarExpr from_root(std::shared_ptr<const Node> n);

  private:
    std::shared_ptr<const Node> node_;
};

// A scalar Schur-class function: analytic on the disc with sup norm <= 1,
// represented by a ScalarExpr whose construction keeps it in the class.
class SchurFunction {
  public:
    SchurFunction() = default;
    explicit SchurFunction(ScalarExpr e) : expr_(std::move(e)) {}

    Complex operator()(const Complex& lambda) const { return expr_(lambda); }
    const ScalarExpr& expr() const { return expr_; }

    // Max of |value| over n boundary points with local refinement of the
    // best bracket; used to validate the class invariant.
    double boundary_sup(int n = 512) const;

  private:
    ScalarExpr expr_;
};

}  // namespace mu
