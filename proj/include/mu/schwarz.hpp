#pragma once

#include "mu/domains.hpp"

namespace mu {

// Two-point interpolation data from the origin: the node lambda0 (nonzero,
// inside the disc) and the target point.
struct TetraSchwarzProblem {
    Complex lambda0;
    TetraPoint target;
};

struct G2SchwarzProblem {
    Complex lambda0;
    SymPoint target;
};

// Which disjunct of a gated either/or condition fired.
enum class Branch { None, First, Second, Both };
const char* branch_name(Branch b);

struct ConditionVerdict {
    std::string id;      // "2".."10" (tetra) or "2".."9" (g2)
    Region verdict = Region::Exterior;
    double margin = 0.0;
    Branch branch = Branch::None;
    bool defined = true;
};

struct ConditionReport {
    Region feasible = Region::Exterior;   // Interior = feasible
    double margin = 0.0;                  // threshold slack |lambda0| - max D
    std::vector<ConditionVerdict> conditions;
    bool hypothesis_ok = true;            // 0 < |lambda0| < 1 and target inside
    std::vector<std::string> notes;
    std::optional<BetaPair> beta;         // condition (10)/(9) witness
    Branch beta_branch = Branch::None;
    std::optional<Matrix2> matrix_target; // contractive completion of the target
    bool tetra_agrees = true;             // g2 only: agreement with f-transfer

    const ConditionVerdict* find(const std::string& id) const;
};

// All conditions (2)-(10) for the tetrablock problem, each with its own
// margin, branch, and tri-state verdict. lambda0 == 0 is rejected as
// invalid input (the conditions divide by it).
ConditionReport tetra_feasibility(const TetraSchwarzProblem& prob,
                                  double band = kDefaultBand);

// Conditions (2)-(9) for the symmetrized bidisc, plus the f-transfer
// cross-check against tetra_feasibility on (s/2, s/2, p).
ConditionReport g2_feasibility(const G2SchwarzProblem& prob,
                               double band = kDefaultBand);

// Feasibility threshold: the problem (lambda0, x) is solvable exactly when
// the returned value is <= |lambda0|. Throws OutsideDomain when the target
// is exterior.
double lempert_origin_tetra(const TetraPoint& x, double band = kDefaultBand);
double lempert_origin_g2(const SymPoint& y, double band = kDefaultBand);

struct BetaWitness {
    BetaPair beta;
    Branch branch = Branch::First;
};

// The beta pair of condition (10), from the branch-gated rescaled point.
// Throws InfeasibleProblem when the problem is infeasible and propagates
// OnTorusX3 when |p| is within band of |lambda0|.
BetaWitness condition10_witness(const TetraSchwarzProblem& prob,
                                double band = kDefaultBand);

}  // namespace mu
