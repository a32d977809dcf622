#pragma once

#include <cstdint>

#include "mu/schwarz.hpp"

namespace mu {

struct BidiscScan {
    double min_modulus = 0.0;
    Complex argmin_z, argmin_w;
};

// Minimum of |1 - z x1 - w x2 + z w x3| over a polar product grid of the
// radius-r bidisc (~n points per variable, radii clustered toward r).
// Heuristic membership proxy; requires n >= 16 and 0 < r < 1.
BidiscScan bidisc_nonvanishing(const TetraPoint& x, int n, double r);

struct Condition7Grid {
    // Product-grid minima of the two branch pencils.
    double min1 = 0.0, min2 = 0.0;
    // Zero located inside the radius-r bidisc via the exact one-variable
    // zero curve z*(w) swept over a refined w-grid (and symmetrically).
    bool zero_found1 = false, zero_found2 = false;
    // Verdicts: branch pencil nonvanishing on the radius-r bidisc.
    bool nonvanishing1 = true, nonvanishing2 = true;
};

// Grid check of condition (7): branch 1 pencil lambda0 - a z - b lambda0 w
// + p z w, branch 2 with the roles of a and b exchanged. The product-grid
// minimum is reported as data; the verdict comes from the zero-curve sweep,
// which refutes decisively (a found zero is a zero) while consistency is
// only evidence. Requires n >= 16.
Condition7Grid condition7_grid(const TetraSchwarzProblem& prob, int n, double r);

// Interior tetrablock sampler: (a11, a22, det A) of random 2x2 contractions
// rescaled to norm sqrt(u), u uniform; a near_boundary_fraction of samples
// is pushed to balanced-completion norm in (0.955, 0.9995) so the battery
// sees the stress shell. Deterministic in seed.
std::vector<TetraPoint> sample_tetra(std::size_t n, std::uint64_t seed,
                                     double near_boundary_fraction = 0.20);

// (z1 + z2, z1 z2) with z1, z2 uniform in the disc; degenerate mode forces
// z1 = z2 = 0.
std::vector<SymPoint> sample_g2(std::size_t n, std::uint64_t seed,
                                bool degenerate = false);

enum class SweepMode { Membership, TetraFeasibility, G2Feasibility };

struct SweepConfig {
    SweepMode mode = SweepMode::Membership;
    std::size_t n_samples = 1000;
    std::uint64_t seed = 42;
    double tolerance_band = kDefaultBand;
    int torus_grid = 4096;        // sup_norm_grid cross-check size
    int bidisc_grid = 64;         // per-variable size for condition7_grid
    double bidisc_radius = 0.9995;
    std::size_t grid_check_count = 0;   // how many samples also get grid oracles
    // Grid oracles are only compared against analytic verdicts when the
    // analytic margin is decisive and the pencil is grid-resolvable.
    double grid_margin_skip = 0.01;
    std::string mutate_condition;  // inject a sign flip into this condition
    std::size_t max_records = 100;
};

struct DisagreementRecord {
    TetraSchwarzProblem problem;   // membership mode: lambda0 = 0, point only
    std::string id_a, id_b;
    double margin_a = 0.0, margin_b = 0.0;
    bool genuine = false;          // both margins outside the band, opposite signs
};

struct SweepReport {
    SweepConfig config;
    std::size_t n_samples = 0;
    std::size_t genuine = 0;
    std::size_t within_band = 0;
    std::size_t hypothesis_violations = 0;
    std::size_t grid_checked = 0;
    std::size_t grid_disagreements = 0;
    std::size_t grid_skipped = 0;
    double max_dnorm_gap = 0.0;    // sup_norm_grid vs closed form, checked subset
    std::vector<DisagreementRecord> records;
};

// Empirical test of the equivalence theorems: samples problems (mixture of
// interior, boundary-adjacent and exterior points; lambda0 both uniform and
// threshold-adjacent), evaluates every analytic condition, scans for
// sign conflicts, and cross-checks the grid oracles on a subsample.
// Healthy build contract: zero genuine records without mutation.
SweepReport equivalence_sweep(const SweepConfig& cfg);

}  // namespace mu
