#pragma once

#include "mu/schwarz.hpp"

namespace mu {

// An evaluable analytic map of the closed disc into the closed tetrablock
// (three components) or the closed symmetrized bidisc (two components).
struct AnalyticDisc {
    std::vector<ScalarExpr> components;
    std::string strategy;   // "S1", "S2", "S3" (builder that produced it)
    bool swapped = false;   // built for (b, a, p) and swapped back

    bool is_g2() const { return components.size() == 2; }
    std::vector<Complex> eval(const Complex& lambda) const;
};

struct InterpolantReport {
    double endpoint_err_0 = 0.0;
    double endpoint_err_lambda0 = 0.0;
    double worst_membership_margin = 0.0;
    bool verified = false;
    int grid_radii = 0;
    int grid_angles = 0;
};

// Disc with phi(0) = (0,0,0) and phi(lambda0) = x, by the first strategy
// that passes verification:
//   S0  swap normalization to |a| >= |b|;
//   S1  phi(l) = (l a/l0, l b/l0, l^2 p/l0^2) when the scaled point is in
//       the closed tetrablock;
//   S2  beta disc through the rescaled point (a/l0, b, p/l0) with a scalar
//       two-point Pick function;
//   S3  same shape with the Pick function replaced by a two-parameter
//       Blaschke product fitted by coordinate descent (marginal cases).
// Throws InfeasibleProblem when the feasibility gate fails and
// ConstructionIncomplete when every strategy fails verification.
// `strategies` restricts the attempt order (comma list, e.g. "S2,S3").
AnalyticDisc build_interpolant_tetra(const TetraSchwarzProblem& prob,
                                     double band = kDefaultBand,
                                     const std::string& strategies = "S1,S2,S3");

// psi = g o phi where phi interpolates (s/2, s/2, p).
AnalyticDisc build_interpolant_g2(const G2SchwarzProblem& prob,
                                  double band = kDefaultBand,
                                  const std::string& strategies = "S1,S2,S3");

// Endpoint errors at 0 and lambda0 plus the minimal membership margin over
// an nr x na polar grid of the closed disc (radii clustered toward 1).
// Requires nr, na >= 8 and nr*na >= 64.
InterpolantReport verify_interpolant(const AnalyticDisc& disc,
                                     const Complex& lambda0,
                                     const TetraPoint& x,
                                     int nr = 64, int na = 64,
                                     double band = kDefaultBand);
InterpolantReport verify_interpolant(const AnalyticDisc& disc,
                                     const Complex& lambda0,
                                     const SymPoint& y,
                                     int nr = 64, int na = 64,
                                     double band = kDefaultBand);

// 2x2 Schur-class witness F with F(0) = [[0, *], [0, 0]], diagonal matching
// the disc components at lambda0 and det F(lambda0) = p. verified reports
// boundary-grid contractivity; a false flag is a reported construction gap,
// not an error.
struct SchurMatrixWitness {
    ScalarExpr f11, f12, f21, f22;
    bool verified = false;
    double boundary_norm = 0.0;
    std::string note;

    Matrix2 eval(const Complex& lambda) const;
};

SchurMatrixWitness schur_matrix_witness(const TetraSchwarzProblem& prob,
                                        const AnalyticDisc& disc,
                                        int boundary_grid = 512);

}  // namespace mu
