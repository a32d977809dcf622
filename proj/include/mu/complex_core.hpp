#pragma once

#include <functional>

#include "mu/complex.hpp"
#include "mu/expr.hpp"
#include "mu/tolerances.hpp"

namespace mu {

struct TetraPoint {
    Complex x1, x2, x3;
};

struct SymPoint {
    Complex s, p;
};

inline TetraPoint swap12(const TetraPoint& x) { return {x.x2, x.x1, x.x3}; }

// Degree-(1,1) map z -> (alpha z + beta) / (gamma z + delta), plus an explicit
// constant branch for the degenerate case x1*x2 == x3 where Psi(. , x)
// collapses to the constant x1.
struct LinearFractional {
    Complex alpha, beta, gamma, delta;
    bool constant_branch = false;
    Complex constant_value;
};

// Psi(z, x) = (x3 z - x1) / (x2 z - 1); constant x1 when x1 x2 == x3.
LinearFractional psi_map(const TetraPoint& x);
// Upsilon(z, x) = Psi(z, (x2, x1, x3)).
LinearFractional upsilon_map(const TetraPoint& x);
// Möbius self-map of the disc sending a to 0: z -> (z - a)/(1 - conj(a) z).
LinearFractional mobius_to_zero(const Complex& a);

// Throws DenominatorVanishes when |gamma z + delta| <= denom_floor on a
// non-constant map.
Complex eval_lf(const LinearFractional& f, const Complex& z,
                double denom_floor = kDenomFloor);

struct DiscImage {
    Complex center;
    double radius = 0.0;
    bool degenerate = false;  // constant map: radius 0
};

// Image of the open disc under Psi(., x). Throws NormInfinite when
// |x2| >= 1 and x1 x2 != x3.
DiscImage psi_image_disc(const TetraPoint& x);

// D(x) = sup over the disc of |Psi(z, x)|:
//   (|x1 - conj(x2) x3| + |x1 x2 - x3|) / (1 - |x2|^2)   if |x2| < 1
//   |x1|                                                 if x1 x2 == x3
//   infinity marker                                      otherwise
// Total function; the infinite case is the ExtReal marker.
ExtReal d_norm(const TetraPoint& x);

// Max of |f| over n equispaced torus points, then golden-section refinement
// of the bracket around the argmax (the equispaced max alone is too coarse
// near |x2| ~ 1). Throws PoleOnBoundary if a grid denominator is under the
// floor. Requires n >= 16.
double sup_norm_grid(const LinearFractional& f, int n);

// Same grid-plus-refinement maximizer for an arbitrary boundary functional;
// shared by the Schur validator and the matrix-witness verifier.
double circle_sup(const std::function<double(const Complex&)>& f, int n);

// rho(z, w) = |(z - w)/(1 - conj(w) z)|. Throws OutsideDisc if either
// modulus is >= 1.
double pseudohyperbolic(const Complex& z, const Complex& w);

// Classical two-point Schwarz-Pick step: the central Schur-class solution
// with h(z1) = w1, h(z2) = w2, built by conjugating with Möbius maps and
// scaling. Throws PickInfeasible when rho(w1, w2) > rho(z1, z2) + tol.
SchurFunction solve_two_point_pick(const Complex& z1, const Complex& w1,
                                   const Complex& z2, const Complex& w2,
                                   double tol = kSchurTol);

}  // namespace mu
