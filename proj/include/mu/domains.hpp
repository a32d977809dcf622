#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mu/complex_core.hpp"

namespace mu {

// Tri-state location of a point relative to a domain (or of a two-point
// problem relative to feasibility): strictly inside, within the boundary
// band, or strictly outside.
enum class Region { Interior, Boundary, Exterior };

Region region_from_margin(double margin, double band);
const char* region_name(Region r);

struct BetaPair {
    Complex beta1, beta2;
    double abs_sum() const { return std::abs(beta1) + std::abs(beta2); }
};

struct Matrix2 {
    Complex a11, a12, a21, a22;

    Complex det() const { return a11 * a22 - a12 * a21; }
    double frob_sq() const;
    // Largest singular value from the closed 2x2 form.
    double op_norm() const;
    double min_sv() const;
};

struct CriterionResult {
    std::string id;     // "2", "2p", "3", ... for the tetrablock battery
    Region verdict = Region::Exterior;
    double margin = 0.0;   // signed slack of the governing inequality
    bool defined = true;   // false: criterion deferred (e.g. beta on |x3|=1)
};

struct MembershipVerdict {
    Region overall = Region::Exterior;
    double margin = 0.0;
    std::vector<CriterionResult> per_criterion;
    std::optional<BetaPair> beta;       // witness, filled when inside
    std::optional<Matrix2> completion;  // symmetric witness, filled when inside
    bool completion_exceeds_ball = false;

    const CriterionResult* find(const std::string& id) const;
};

// Signed slack of the total criterion
//   |x1|^2 + |x2|^2 - |x3|^2 + 2|x1 x2 - x3| <= 1  and  |x3| <= 1
// (the battery's governing criterion: defined everywhere, no divisions).
double tetra_overall_margin(const TetraPoint& x);

// Full criterion battery "2","2p","3","3p","4","4p","5","6","7","8","9".
// Pass a criteria list to evaluate a subset; null/empty means all.
MembershipVerdict tetra_membership(const TetraPoint& x,
                                   double band = kDefaultBand,
                                   const std::vector<std::string>* criteria = nullptr);

// Canonical solution of x1 = b1 + conj(b2) x3, x2 = b2 + conj(b1) x3:
//   b1 = (x1 - conj(x2) x3) / (1 - |x3|^2),  b2 = (x2 - conj(x1) x3) / (1 - |x3|^2).
// Throws OnTorusX3 when |x3| >= 1 - torus_tol.
BetaPair beta_decompose(const TetraPoint& x, double torus_tol = kTorusGuard);

struct CompletionResult {
    Matrix2 A;
    bool exceeds_ball = false;  // achieved norm > 1 + tol (warning, not error)
};

// A matrix with a11 = x1, a22 = x2, det = x3. Symmetric mode uses the
// principal square root of x1 x2 - x3 on the off-diagonal; non-symmetric
// mode balances |a12| = |a21| by golden-section minimization of the norm
// over log t.
CompletionResult matrix_completion(const TetraPoint& x, bool symmetric = true,
                                   double tol = kDefaultBand);

// Monic quadratic z^2 - s z + p: both roots, cancellation-safe.
std::pair<Complex, Complex> quadratic_roots(const Complex& s, const Complex& p);

// Symmetrized-bidisc battery: the beta criterion (primary; deferred when
// |p| is within band of 1) and the root criterion (both roots of
// z^2 - s z + p in the closed disc) as a redundant cross-check.
double g2_overall_margin(const SymPoint& y, double band = kDefaultBand);
MembershipVerdict g2_membership(const SymPoint& y, double band = kDefaultBand);

// f(s, p) = (s/2, s/2, p) and g(a, b, p) = (a + b, p); g restricted to the
// image of f inverts it.
TetraPoint embed_f(const SymPoint& y);
SymPoint project_g(const TetraPoint& x);

struct TirthaResult {
    Region verdict = Region::Exterior;
    Complex worst_z;
    double min_margin = 0.0;
};

// x in E iff (x1 + z x2, z x3) in G2 for every unimodular z: evaluates the
// G2 margin over n torus points and golden-polishes the worst bracket so
// narrow exterior dips are not missed. Requires n >= 16.
TirthaResult tirtha_check(const TetraPoint& x, int n, double band = kDefaultBand);

}  // namespace mu
