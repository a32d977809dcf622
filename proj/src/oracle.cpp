#include "mu/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mu/errors.hpp"
#include "mu/rng.hpp"

namespace mu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// polar grid layout: ~n points split into radii (clustered toward rmax)
// times equispaced angles
struct PolarLayout {
    int nr, na;
};

PolarLayout polar_layout(int n) {
    int nr = std::max(2, static_cast<int>(std::lround(std::sqrt(n / 8.0))));
    int na = std::max(8, (n + nr - 1) / nr);
    return {nr, na};
}

double cheb_radius(double rmax, int i, int nr) {
    return rmax * std::sin(0.5 * M_PI * (i + 1) / nr);
}

// min over |w| <= r of |(alpha w + beta)/(gamma w + delta)| via the image
// circle of the Möbius map; exact up to roundoff. Returns +inf when the
// map has no finite values (identically infinite denominators).
double mobius_min_abs_over_disc(Complex alpha, Complex beta, Complex gamma,
                                Complex delta, double r) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        const Complex A = alpha * r, B = beta, C = gamma * r, D = delta;
        if (std::abs(C) + std::abs(D) <= 1e-300) {
            if (std::abs(A) + std::abs(B) <= 1e-300) return 0.0;
            return kInf;
        }
        const double dd = std::norm(D) - std::norm(C);
        if (std::abs(dd) <= 1e-13 * (std::norm(C) + std::norm(D))) {
            r *= 1.0 - 1e-7;  // pole essentially on the circle; nudge inward
            continue;
        }
        const Complex c = (B * std::conj(D) - A * std::conj(C)) / dd;
        const double k = (std::norm(B) - std::norm(A)) / dd;
        const double rho = std::sqrt(std::max(0.0, std::norm(c) - k));
        if (dd > 0.0) return std::max(0.0, std::abs(c) - rho);  // image disc
        return std::max(0.0, rho - std::abs(c));  // pole inside: image exterior
    }
    return 0.0;
}

double bilinear_abs(const Complex& c0, const Complex& cz, const Complex& cw,
                    const Complex& czw, const Complex& z, const Complex& w) {
    return std::abs(c0 + cz * z + cw * w + czw * z * w);
}

// product-grid minimum of |c0 + cz z + cw w + czw z w| over the radius-r bidisc
BidiscScan pencil_grid_min(const Complex& c0, const Complex& cz,
                           const Complex& cw, const Complex& czw, int n,
                           double r) {
    const PolarLayout L = polar_layout(n);
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(L.nr) * L.na);
    for (int i = 0; i < L.nr; ++i) {
        const double rad = cheb_radius(r, i, L.nr);
        for (int j = 0; j < L.na; ++j)
            pts.push_back(rad * unit_phase(2.0 * M_PI * j / L.na));
    }
    BidiscScan scan;
    scan.min_modulus = kInf;
    for (const Complex& z : pts) {
        for (const Complex& w : pts) {
            const double v = bilinear_abs(c0, cz, cw, czw, z, w);
            if (v < scan.min_modulus) {
                scan.min_modulus = v;
                scan.argmin_z = z;
                scan.argmin_w = w;
            }
        }
    }
    return scan;
}

// does |c0 + cz z + cw w + czw z w| vanish somewhere on the radius-r bidisc?
// Decided through the zero curves z*(w) and w*(z), whose moduli are Möbius
// and admit exact disc minima.
bool pencil_has_zero(const Complex& c0, const Complex& cz, const Complex& cw,
                     const Complex& czw, double r) {
    // z*(w) = -(c0 + cw w) / (cz + czw w)
    const double mz = mobius_min_abs_over_disc(-cw, -c0, czw, cz, r);
    if (mz <= r * (1.0 + 1e-12)) return true;
    // w*(z) = -(c0 + cz z) / (cw + czw z)
    const double mw = mobius_min_abs_over_disc(-cz, -c0, czw, cw, r);
    return mw <= r * (1.0 + 1e-12);
}

}  // namespace

BidiscScan bidisc_nonvanishing(const TetraPoint& x, int n, double r) {
    if (n < 16) throw std::invalid_argument("bidisc_nonvanishing: n must be >= 16");
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("bidisc_nonvanishing: r must be in (0,1)");
    return pencil_grid_min(1.0, -x.x1, -x.x2, x.x3, n, r);
}

Condition7Grid condition7_grid(const TetraSchwarzProblem& prob, int n, double r) {
    if (n < 16) throw std::invalid_argument("condition7_grid: n must be >= 16");
    const Complex l0 = prob.lambda0;
    const Complex a = prob.target.x1, b = prob.target.x2, p = prob.target.x3;

    Condition7Grid g;
    // branch 1: lambda0 - a z - b lambda0 w + p z w
    g.min1 = pencil_grid_min(l0, -a, -b * l0, p, n, r).min_modulus;
    g.zero_found1 = pencil_has_zero(l0, -a, -b * l0, p, r);
    g.nonvanishing1 = !g.zero_found1;
    // branch 2: lambda0 - a lambda0 z - b w + p z w
    g.min2 = pencil_grid_min(l0, -a * l0, -b, p, n, r).min_modulus;
    g.zero_found2 = pencil_has_zero(l0, -a * l0, -b, p, r);
    g.nonvanishing2 = !g.zero_found2;
    return g;
}

namespace {

Rng sample_rng(std::uint64_t seed, std::size_t index) {
    return Rng(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

Matrix2 random_matrix(Rng& rng) {
    return {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
}

TetraPoint point_of(const Matrix2& A) { return {A.a11, A.a22, A.det()}; }

Matrix2 scaled(const Matrix2& A, double factor) {
    return {A.a11 * factor, A.a12 * factor, A.a21 * factor, A.a22 * factor};
}

// rescale x so its balanced symmetric completion has norm exactly `target`
TetraPoint rescale_to_completion_norm(const TetraPoint& x, double target) {
    const Matrix2 bal = matrix_completion(x, true).A;
    const double norm = bal.op_norm();
    if (norm <= 1e-150) return x;
    const double c = target / norm;
    return {c * x.x1, c * x.x2, c * c * x.x3};
}

TetraPoint interior_tetra_sample(Rng& rng, double near_boundary_fraction) {
    const Matrix2 A = random_matrix(rng);
    const double norm = A.op_norm();
    if (norm <= 1e-150) return {0.0, 0.0, 0.0};
    if (rng.unit() < near_boundary_fraction) {
        const double target = rng.uniform(0.955, 0.9995);
        return rescale_to_completion_norm(point_of(scaled(A, 1.0 / norm)), target);
    }
    const double target = std::sqrt(rng.unit());
    return point_of(scaled(A, target / norm));
}

}  // namespace

std::vector<TetraPoint> sample_tetra(std::size_t n, std::uint64_t seed,
                                     double near_boundary_fraction) {
    std::vector<TetraPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = sample_rng(seed, i);
        out.push_back(interior_tetra_sample(rng, near_boundary_fraction));
    }
    return out;
}

std::vector<SymPoint> sample_g2(std::size_t n, std::uint64_t seed,
                                bool degenerate) {
    std::vector<SymPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (degenerate) {
            out.push_back({0.0, 0.0});
            continue;
        }
        Rng rng = sample_rng(seed, i);
        const Complex z1 = rng.unit_disc(), z2 = rng.unit_disc();
        out.push_back({z1 + z2, z1 * z2});
    }
    return out;
}

namespace {

struct NamedMargin {
    std::string id;
    double margin;
    bool defined;
};

void apply_mutation(std::vector<NamedMargin>& ms, const std::string& id) {
    if (id.empty()) return;
    for (auto& m : ms)
        if (m.id == id) m.margin = -m.margin;
}

// genuine conflict: two defined margins outside the band with opposite signs
void scan_conflicts(const std::vector<NamedMargin>& ms, double band,
                    const TetraSchwarzProblem& problem, SweepReport& rep) {
    const NamedMargin* hi = nullptr;
    const NamedMargin* lo = nullptr;
    for (const auto& m : ms) {
        if (!m.defined) continue;
        if (!hi || m.margin > hi->margin) hi = &m;
        if (!lo || m.margin < lo->margin) lo = &m;
    }
    if (!hi || !lo) return;
    if (hi->margin > band && lo->margin < -band) {
        ++rep.genuine;
        if (rep.records.size() < rep.config.max_records)
            rep.records.push_back(
                {problem, hi->id, lo->id, hi->margin, lo->margin, true});
        return;
    }
    // differing tri-states that are not genuine sit inside the band
    bool mixed = false;
    for (const auto& m : ms) {
        if (!m.defined) continue;
        if (region_from_margin(m.margin, band) !=
            region_from_margin(hi->margin, band)) {
            mixed = true;
            break;
        }
    }
    if (mixed) {
        ++rep.within_band;
        if (rep.records.size() < rep.config.max_records)
            rep.records.push_back(
                {problem, hi->id, lo->id, hi->margin, lo->margin, false});
    }
}

TetraPoint membership_sample(Rng& rng) {
    const double cls = rng.unit();
    if (cls < 0.5) return interior_tetra_sample(rng, 0.25);
    const Matrix2 A = random_matrix(rng);
    const double norm = A.op_norm();
    const TetraPoint base =
        norm > 1e-150 ? point_of(scaled(A, 1.0 / norm)) : TetraPoint{0, 0, 0};
    if (cls < 0.8) {
        // boundary-adjacent: balanced completion norm 1 +/- delta
        const double delta = std::pow(10.0, rng.uniform(-8.0, -2.0));
        const double target = rng.unit() < 0.5 ? 1.0 - delta : 1.0 + delta;
        return rescale_to_completion_norm(base, target);
    }
    if (rng.unit() < 0.3) {
        // wild exterior, including |x2| >= 1 cases that exercise the
        // infinite-norm paths
        return {3.0 * rng.unit_disc(), 3.0 * rng.unit_disc(), 3.0 * rng.unit_disc()};
    }
    return rescale_to_completion_norm(base, rng.uniform(1.02, 2.0));
}

Complex draw_lambda0(Rng& rng, double threshold) {
    const double u = rng.unit();
    double mod;
    if (u < 0.4 || threshold < 1e-3) {
        do {
            const Complex l = rng.unit_disc();
            mod = std::abs(l);
        } while (mod < 1e-3);
    } else {
        const double eta = std::pow(10.0, rng.uniform(-7.0, -0.5));
        const double sign = rng.unit() < 0.5 ? -1.0 : 1.0;
        mod = std::clamp(threshold * (1.0 + sign * eta), 1e-3, 1.0 - 1e-6);
    }
    return mod * rng.circle_point();
}

}  // namespace

SweepReport equivalence_sweep(const SweepConfig& cfg) {
    SweepReport rep;
    rep.config = cfg;
    rep.n_samples = cfg.n_samples;
    const double band = cfg.tolerance_band;

    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        Rng rng = sample_rng(cfg.seed, i);

        if (cfg.mode == SweepMode::Membership) {
            const TetraPoint x = membership_sample(rng);
            const MembershipVerdict v = tetra_membership(x, band);
            std::vector<NamedMargin> ms;
            ms.reserve(v.per_criterion.size());
            for (const auto& c : v.per_criterion)
                ms.push_back({c.id, c.margin, c.defined});
            apply_mutation(ms, cfg.mutate_condition);
            scan_conflicts(ms, band, {Complex(0.0, 0.0), x}, rep);

            if (i < cfg.grid_check_count && std::abs(x.x2) <= 0.95) {
                ++rep.grid_checked;
                const ExtReal d = d_norm(x);
                const double g = sup_norm_grid(psi_map(x), cfg.torus_grid);
                const double gap = std::abs(d.value - g);
                rep.max_dnorm_gap = std::max(rep.max_dnorm_gap, gap);
                if (gap > 1e-6) ++rep.grid_disagreements;
            }
            continue;
        }

        if (cfg.mode == SweepMode::TetraFeasibility) {
            const TetraPoint x = interior_tetra_sample(rng, 0.25);
            const double threshold = [&] {
                const ExtReal d1 = d_norm(x), d2 = d_norm(swap12(x));
                return std::max(d1.value, d2.value);
            }();
            const TetraSchwarzProblem prob{draw_lambda0(rng, threshold), x};
            const ConditionReport r = tetra_feasibility(prob, band);
            if (!r.hypothesis_ok) ++rep.hypothesis_violations;

            std::vector<NamedMargin> ms;
            for (const auto& c : r.conditions)
                ms.push_back({c.id, c.margin, c.defined});
            apply_mutation(ms, cfg.mutate_condition);
            scan_conflicts(ms, band, prob, rep);

            if (i < cfg.grid_check_count) {
                const ConditionVerdict* c7 = r.find("7");
                // compare only when the pencil is grid-resolvable: decisive
                // margin and coefficients away from the distinguished boundary
                const double guard =
                    std::min({1.0 - std::abs(x.x1), 1.0 - std::abs(x.x2)});
                if (c7 && c7->defined && guard > 5e-3 &&
                    (c7->margin > band || c7->margin < -cfg.grid_margin_skip)) {
                    ++rep.grid_checked;
                    const Condition7Grid g =
                        condition7_grid(prob, cfg.bidisc_grid, cfg.bidisc_radius);
                    const double aa = std::abs(x.x1), ab = std::abs(x.x2);
                    const bool gated_nonvanishing =
                        (ab <= aa && g.nonvanishing1) || (aa <= ab && g.nonvanishing2);
                    const bool analytic_ok = c7->margin > band;
                    if (analytic_ok != gated_nonvanishing) ++rep.grid_disagreements;
                } else {
                    ++rep.grid_skipped;
                }
                if (std::abs(x.x2) <= 0.95) {
                    const double g = sup_norm_grid(psi_map(x), cfg.torus_grid);
                    const double gap = std::abs(d_norm(x).value - g);
                    rep.max_dnorm_gap = std::max(rep.max_dnorm_gap, gap);
                    if (gap > 1e-6) ++rep.grid_disagreements;
                }
            }
            continue;
        }

        // G2 feasibility
        Rng prng = sample_rng(cfg.seed ^ 0x5bd1e995ULL, i);
        const Complex z1 = prng.unit_disc(), z2 = prng.unit_disc();
        const SymPoint y{z1 + z2, z1 * z2};
        const double threshold = lempert_origin_g2(y, band);
        const G2SchwarzProblem prob{draw_lambda0(rng, threshold), y};
        const ConditionReport r = g2_feasibility(prob, band);
        if (!r.hypothesis_ok) ++rep.hypothesis_violations;

        std::vector<NamedMargin> ms;
        for (const auto& c : r.conditions)
            ms.push_back({c.id, c.margin, c.defined});
        // f-transfer agreement enters the scan as its own entry
        const ConditionReport tr =
            tetra_feasibility({prob.lambda0, embed_f(y)}, band);
        ms.push_back({"tetra_f", tr.margin, true});
        apply_mutation(ms, cfg.mutate_condition);
        scan_conflicts(ms, band, {prob.lambda0, embed_f(y)}, rep);
    }
    return rep;
}

}  // namespace mu
