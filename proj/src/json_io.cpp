#include "mu/json_io.hpp"

#include <cmath>

#include "mu/errors.hpp"

namespace mu {

namespace {

// JSON has no Inf; non-finite margins travel as null
Json number_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

const char* region_word(Region r, bool feasibility) {
    if (!feasibility) return region_name(r);
    switch (r) {
        case Region::Interior: return "feasible";
        case Region::Boundary: return "boundary";
        case Region::Exterior: return "infeasible";
    }
    return "?";
}

Json matrix_to_json(const Matrix2& m) {
    return Json{{"a11", complex_to_json(m.a11)},
                {"a12", complex_to_json(m.a12)},
                {"a21", complex_to_json(m.a21)},
                {"a22", complex_to_json(m.a22)},
                {"op_norm", m.op_norm()}};
}

}  // namespace

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw MalformedInput("complex values must be two-element arrays [re, im]");
    const Complex z(j[0].get<double>(), j[1].get<double>());
    if (!is_finite(z)) throw MalformedInput("complex components must be finite");
    return z;
}

Json to_json(const TetraPoint& x) {
    return Json::array(
        {complex_to_json(x.x1), complex_to_json(x.x2), complex_to_json(x.x3)});
}

Json to_json(const SymPoint& y) {
    return Json::array({complex_to_json(y.s), complex_to_json(y.p)});
}

TetraPoint tetra_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3)
        throw MalformedInput("tetrablock points are arrays of three complex values");
    return {complex_from_json(j[0]), complex_from_json(j[1]),
            complex_from_json(j[2])};
}

SymPoint g2_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw MalformedInput("symmetrized-bidisc points are arrays of two complex values");
    return {complex_from_json(j[0]), complex_from_json(j[1])};
}

Json to_json(const MembershipVerdict& v, const std::string& domain) {
    Json crits = Json::array();
    for (const auto& c : v.per_criterion)
        crits.push_back(Json{{"id", c.id},
                             {"verdict", region_name(c.verdict)},
                             {"margin", number_or_null(c.margin)},
                             {"defined", c.defined}});
    Json w = Json::object();
    if (v.beta) {
        if (domain == "g2")
            w["beta"] = complex_to_json(v.beta->beta1);
        else
            w["beta"] = Json::array({complex_to_json(v.beta->beta1),
                                     complex_to_json(v.beta->beta2)});
    }
    if (v.completion) {
        w["matrix"] = matrix_to_json(*v.completion);
        w["completion_exceeds_ball"] = v.completion_exceeds_ball;
    }
    return Json{{"domain", domain},
                {"overall", region_name(v.overall)},
                {"margin", number_or_null(v.margin)},
                {"criteria", crits},
                {"witnesses", w}};
}

Json to_json(const ConditionReport& r, const std::string& domain,
             const Complex& lambda0) {
    Json conds = Json::array();
    for (const auto& c : r.conditions)
        conds.push_back(Json{{"id", c.id},
                             {"verdict", region_word(c.verdict, true)},
                             {"margin", number_or_null(c.margin)},
                             {"branch", branch_name(c.branch)},
                             {"defined", c.defined}});
    Json w = Json::object();
    if (r.beta) {
        w["beta"] = Json::array({complex_to_json(r.beta->beta1),
                                 complex_to_json(r.beta->beta2)});
        w["beta_branch"] = branch_name(r.beta_branch);
    }
    if (r.matrix_target) w["matrix_target"] = matrix_to_json(*r.matrix_target);
    Json out{{"domain", domain},
             {"lambda0", complex_to_json(lambda0)},
             {"feasible", region_word(r.feasible, true)},
             {"margin", number_or_null(r.margin)},
             {"hypothesis_ok", r.hypothesis_ok},
             {"notes", r.notes},
             {"conditions", conds},
             {"witnesses", w}};
    if (domain == "g2") out["tetra_agrees"] = r.tetra_agrees;
    return out;
}

Json expr_to_json(const ScalarExpr& e) {
    using Kind = ScalarExpr::Kind;
    const auto& n = *e.root();
    switch (n.kind) {
        case Kind::Lambda: return Json{{"type", "lambda"}};
        case Kind::Const:
            return Json{{"type", "const"}, {"value", complex_to_json(n.value)}};
        case Kind::Add:
            return Json{{"type", "add"},
                        {"lhs", expr_to_json(ScalarExpr::from_root(n.a))},
                        {"rhs", expr_to_json(ScalarExpr::from_root(n.b))}};
        case Kind::Mul:
            return Json{{"type", "mul"},
                        {"lhs", expr_to_json(ScalarExpr::from_root(n.a))},
                        {"rhs", expr_to_json(ScalarExpr::from_root(n.b))}};
        case Kind::Blaschke:
            return Json{{"type", "blaschke"},
                        {"point", complex_to_json(n.value)},
                        {"arg", expr_to_json(ScalarExpr::from_root(n.a))}};
    }
    throw MalformedInput("unknown expression node");
}

ScalarExpr expr_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw MalformedInput("expression nodes are objects with a \"type\"");
    const std::string type = j["type"].get<std::string>();
    if (type == "lambda") return ScalarExpr::lambda();
    if (type == "const") {
        if (!j.contains("value")) throw MalformedInput("const node needs a value");
        return ScalarExpr::constant(complex_from_json(j["value"]));
    }
    if (type == "add" || type == "mul") {
        if (!j.contains("lhs") || !j.contains("rhs"))
            throw MalformedInput(type + " node needs lhs and rhs");
        const ScalarExpr a = expr_from_json(j["lhs"]);
        const ScalarExpr b = expr_from_json(j["rhs"]);
        return type == "add" ? ScalarExpr::add(a, b) : ScalarExpr::mul(a, b);
    }
    if (type == "blaschke") {
        if (!j.contains("point") || !j.contains("arg"))
            throw MalformedInput("blaschke node needs point and arg");
        return ScalarExpr::blaschke(complex_from_json(j["point"]),
                                    expr_from_json(j["arg"]));
    }
    throw MalformedInput("unknown expression node type: " + type);
}

Json to_json(const AnalyticDisc& d) {
    Json comps = Json::array();
    for (const auto& c : d.components) comps.push_back(expr_to_json(c));
    return Json{{"domain", d.is_g2() ? "g2" : "tetra"},
                {"strategy", d.strategy},
                {"swapped", d.swapped},
                {"components", comps}};
}

AnalyticDisc disc_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
        throw MalformedInput("disc JSON needs a components array");
    AnalyticDisc d;
    for (const auto& c : j["components"]) d.components.push_back(expr_from_json(c));
    if (d.components.size() != 2 && d.components.size() != 3)
        throw MalformedInput("disc must have two or three components");
    d.strategy = j.value("strategy", std::string{});
    d.swapped = j.value("swapped", false);
    return d;
}

Json to_json(const InterpolantReport& r) {
    return Json{{"endpoint_err_0", r.endpoint_err_0},
                {"endpoint_err_lambda0", r.endpoint_err_lambda0},
                {"worst_membership_margin", r.worst_membership_margin},
                {"verified", r.verified},
                {"grid", Json::array({r.grid_radii, r.grid_angles})}};
}

Json to_json(const SchurMatrixWitness& w) {
    return Json{{"f11", expr_to_json(w.f11)},
                {"f12", expr_to_json(w.f12)},
                {"f21", expr_to_json(w.f21)},
                {"f22", expr_to_json(w.f22)},
                {"verified", w.verified},
                {"boundary_norm", w.boundary_norm},
                {"note", w.note}};
}

Json to_json(const SweepReport& r) {
    Json recs = Json::array();
    for (const auto& rec : r.records) {
        Json jr{{"ids", Json::array({rec.id_a, rec.id_b})},
                {"margins",
                 Json::array({number_or_null(rec.margin_a),
                              number_or_null(rec.margin_b)})},
                {"classification", rec.genuine ? "genuine" : "within-band"},
                {"point", to_json(rec.problem.target)}};
        if (std::abs(rec.problem.lambda0) > 0.0)
            jr["lambda0"] = complex_to_json(rec.problem.lambda0);
        recs.push_back(jr);
    }
    const char* mode = r.config.mode == SweepMode::Membership ? "membership"
                       : r.config.mode == SweepMode::TetraFeasibility
                           ? "tetra_feasibility"
                           : "g2_feasibility";
    Json cfg{{"mode", mode},
             {"n_samples", r.config.n_samples},
             {"seed", r.config.seed},
             {"tolerance_band", r.config.tolerance_band},
             {"grid", Json{{"torus", r.config.torus_grid},
                           {"bidisc", Json::array({r.config.bidisc_grid,
                                                   r.config.bidisc_grid})},
                           {"bidisc_radius", r.config.bidisc_radius}}},
             {"grid_check_count", r.config.grid_check_count},
             {"max_records", r.config.max_records}};
    if (!r.config.mutate_condition.empty())
        cfg["mutate_condition"] = r.config.mutate_condition;
    return Json{{"config", cfg},
                {"summary", Json{{"n_samples", r.n_samples},
                                 {"genuine_disagreements", r.genuine},
                                 {"within_band", r.within_band},
                                 {"hypothesis_violations", r.hypothesis_violations},
                                 {"grid_checked", r.grid_checked},
                                 {"grid_disagreements", r.grid_disagreements},
                                 {"grid_skipped", r.grid_skipped},
                                 {"max_dnorm_gap", r.max_dnorm_gap}}},
                {"records", recs}};
}

SweepConfig sweep_config_from_json(const Json& j) {
    if (!j.is_object()) throw MalformedInput("sweep config must be an object");
    SweepConfig cfg;
    const std::string mode = j.value("mode", std::string("membership"));
    if (mode == "membership") cfg.mode = SweepMode::Membership;
    else if (mode == "tetra_feasibility") cfg.mode = SweepMode::TetraFeasibility;
    else if (mode == "g2_feasibility") cfg.mode = SweepMode::G2Feasibility;
    else throw MalformedInput("unknown sweep mode: " + mode);
    cfg.n_samples = j.value("n_samples", cfg.n_samples);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.tolerance_band = j.value("tolerance_band", cfg.tolerance_band);
    cfg.grid_check_count = j.value("grid_check_count", cfg.grid_check_count);
    cfg.max_records = j.value("max_records", cfg.max_records);
    cfg.mutate_condition = j.value("mutate_condition", cfg.mutate_condition);
    if (j.contains("grid")) {
        const Json& g = j["grid"];
        cfg.torus_grid = g.value("torus", cfg.torus_grid);
        if (g.contains("bidisc") && g["bidisc"].is_array() && !g["bidisc"].empty())
            cfg.bidisc_grid = g["bidisc"][0].get<int>();
        cfg.bidisc_radius = g.value("bidisc_radius", cfg.bidisc_radius);
    }
    if (cfg.n_samples < 1) throw MalformedInput("n_samples must be >= 1");
    return cfg;
}

}  // namespace mu
