#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "mu/errors.hpp"
#include "mu/json_io.hpp"

namespace {

constexpr int kExitMalformed = 64;
constexpr int kExitInternal = 70;

struct IoOptions {
    std::string input;   // empty: stdin
    std::string output;  // empty: stdout
    double tol = mu::kDefaultBand;
    int grid = 64;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

mu::Json read_input(const IoOptions& io) {
    std::string text;
    if (io.input.empty() || io.input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(io.input);
        if (!f) throw mu::MalformedInput("cannot open input file: " + io.input);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return mu::Json::parse(text);
    } catch (const std::exception& e) {
        throw mu::MalformedInput(std::string("invalid JSON: ") + e.what());
    }
}

void write_output(const IoOptions& io, const mu::Json& j) {
    if (io.output.empty() || io.output == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(io.output);
    if (!f) throw mu::MalformedInput("cannot open output file: " + io.output);
    f << j.dump(2) << "\n";
}

std::string required_domain(const mu::Json& j) {
    if (!j.is_object() || !j.contains("domain") || !j["domain"].is_string())
        throw mu::MalformedInput("input needs a \"domain\" of \"tetra\" or \"g2\"");
    const std::string d = j["domain"].get<std::string>();
    if (d != "tetra" && d != "g2")
        throw mu::MalformedInput("unknown domain: " + d);
    return d;
}

mu::Complex required_lambda0(const mu::Json& j) {
    if (!j.contains("lambda0"))
        throw mu::MalformedInput("input needs \"lambda0\"");
    const mu::Complex l = mu::complex_from_json(j["lambda0"]);
    if (std::abs(l) <= mu::kDenomFloor)
        throw mu::MalformedInput("lambda0 must be nonzero");
    return l;
}

const mu::Json& required_point(const mu::Json& j) {
    if (!j.contains("point")) throw mu::MalformedInput("input needs \"point\"");
    return j["point"];
}

int region_exit(mu::Region r) {
    switch (r) {
        case mu::Region::Interior: return 0;
        case mu::Region::Boundary: return 1;
        case mu::Region::Exterior: return 2;
    }
    return kExitInternal;
}

int cmd_membership(const IoOptions& io) {
    const mu::Json in = read_input(io);
    const std::string domain = required_domain(in);
    mu::Json out;
    mu::Region overall;
    if (domain == "tetra") {
        const auto v = mu::tetra_membership(mu::tetra_from_json(required_point(in)), io.tol);
        overall = v.overall;
        out = mu::to_json(v, domain);
    } else {
        const auto v = mu::g2_membership(mu::g2_from_json(required_point(in)), io.tol);
        overall = v.overall;
        out = mu::to_json(v, domain);
    }
    write_output(io, out);
    return region_exit(overall);
}

int cmd_feasibility(const IoOptions& io) {
    const mu::Json in = read_input(io);
    const std::string domain = required_domain(in);
    const mu::Complex l0 = required_lambda0(in);
    mu::ConditionReport rep;
    if (domain == "tetra")
        rep = mu::tetra_feasibility({l0, mu::tetra_from_json(required_point(in))}, io.tol);
    else
        rep = mu::g2_feasibility({l0, mu::g2_from_json(required_point(in))}, io.tol);
    write_output(io, mu::to_json(rep, domain, l0));
    return region_exit(rep.feasible);
}

int cmd_lempert(const IoOptions& io) {
    const mu::Json in = read_input(io);
    const std::string domain = required_domain(in);
    double value;
    try {
        if (domain == "tetra")
            value = mu::lempert_origin_tetra(mu::tetra_from_json(required_point(in)), io.tol);
        else
            value = mu::lempert_origin_g2(mu::g2_from_json(required_point(in)), io.tol);
    } catch (const mu::OutsideDomain& e) {
        write_output(io, mu::Json{{"error", e.what()}});
        return 2;
    }
    write_output(io, mu::Json{{"domain", domain}, {"lempert", value}});
    return 0;
}

int cmd_interpolate(const IoOptions& io) {
    const mu::Json in = read_input(io);
    const std::string domain = required_domain(in);
    const mu::Complex l0 = required_lambda0(in);
    try {
        mu::AnalyticDisc disc;
        mu::InterpolantReport rep;
        if (domain == "tetra") {
            const mu::TetraPoint x = mu::tetra_from_json(required_point(in));
            disc = mu::build_interpolant_tetra({l0, x}, io.tol);
            rep = mu::verify_interpolant(disc, l0, x, io.grid, io.grid, io.tol);
        } else {
            const mu::SymPoint y = mu::g2_from_json(required_point(in));
            disc = mu::build_interpolant_g2({l0, y}, io.tol);
            rep = mu::verify_interpolant(disc, l0, y, io.grid, io.grid, io.tol);
        }
        write_output(io, mu::Json{{"disc", mu::to_json(disc)},
                                  {"report", mu::to_json(rep)}});
        return rep.verified ? 0 : 3;
    } catch (const mu::InfeasibleProblem& e) {
        write_output(io, mu::Json{{"error", e.what()}});
        return 2;
    } catch (const mu::ConstructionIncomplete& e) {
        write_output(io, mu::Json{{"error", e.what()},
                                  {"classification", "construction_incomplete"}});
        return 3;
    }
}

int cmd_verify(const IoOptions& io) {
    const mu::Json in = read_input(io);
    const std::string domain = required_domain(in);
    const mu::Complex l0 = required_lambda0(in);
    if (!in.contains("disc")) throw mu::MalformedInput("input needs \"disc\"");
    const mu::AnalyticDisc disc = mu::disc_from_json(in["disc"]);
    mu::InterpolantReport rep;
    if (domain == "tetra") {
        if (disc.components.size() != 3)
            throw mu::MalformedInput("tetra verification expects a 3-component disc");
        rep = mu::verify_interpolant(disc, l0, mu::tetra_from_json(required_point(in)),
                                     io.grid, io.grid, io.tol);
    } else {
        if (disc.components.size() != 2)
            throw mu::MalformedInput("g2 verification expects a 2-component disc");
        rep = mu::verify_interpolant(disc, l0, mu::g2_from_json(required_point(in)),
                                     io.grid, io.grid, io.tol);
    }
    write_output(io, mu::to_json(rep));
    return rep.verified ? 0 : 2;
}

int cmd_sweep(const IoOptions& io) {
    const mu::Json in = read_input(io);
    mu::SweepConfig cfg = mu::sweep_config_from_json(in);
    if (io.seed_set) cfg.seed = io.seed;
    cfg.tolerance_band = in.value("tolerance_band", io.tol);
    const mu::SweepReport rep = mu::equivalence_sweep(cfg);
    write_output(io, mu::to_json(rep));
    return (rep.genuine == 0 && rep.grid_disagreements == 0) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"membership, feasibility, and interpolation for the tetrablock "
                 "and the symmetrized bidisc"};
    app.require_subcommand(1);

    IoOptions io;
    if (const char* env = std::getenv("MU_DOMAINS_TOL")) {
        try {
            io.tol = std::stod(env);
        } catch (...) {
            std::cerr << "ignoring invalid MU_DOMAINS_TOL\n";
        }
    }

    app.add_option("--input", io.input, "input JSON file (default: stdin)");
    app.add_option("--output", io.output, "output JSON file (default: stdout)");
    app.add_option("--tol", io.tol, "boundary band for tri-state verdicts");
    app.add_option("--grid", io.grid, "verification grid size per axis");
    auto* seed_opt = app.add_option("--seed", io.seed, "sweep seed override");

    auto* membership = app.add_subcommand("membership", "classify a point");
    auto* feasibility = app.add_subcommand("feasibility", "two-point Schwarz feasibility");
    auto* lempert = app.add_subcommand("lempert", "origin feasibility threshold");
    auto* interpolate = app.add_subcommand("interpolate", "build a verified analytic disc");
    auto* verify = app.add_subcommand("verify", "re-check a serialized disc");
    auto* sweep = app.add_subcommand("sweep", "equivalence sweep campaign");
    for (auto* sub : {membership, feasibility, lempert, interpolate, verify, sweep})
        sub->fallthrough();  // global --input/--tol/... may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    io.seed_set = seed_opt->count() > 0;

    try {
        if (membership->parsed()) return cmd_membership(io);
        if (feasibility->parsed()) return cmd_feasibility(io);
        if (lempert->parsed()) return cmd_lempert(io);
        if (interpolate->parsed()) return cmd_interpolate(io);
        if (verify->parsed()) return cmd_verify(io);
        if (sweep->parsed()) return cmd_sweep(io);
    } catch (const mu::MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
