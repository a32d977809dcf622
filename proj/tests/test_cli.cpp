#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

using Json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// run the CLI with the given arguments, feeding `input` on stdin
RunResult run_cli(const std::string& args, const std::string& input,
                  const std::string& env = "") {
    const std::string tmp = "/tmp/mu_cli_in.json";
    {
        FILE* f = std::fopen(tmp.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fwrite(input.data(), 1, input.size(), f);
        std::fclose(f);
    }
    const std::string cmd = env + " " + std::string(MU_CLI_PATH) + " " + args +
                            " --input " + tmp + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("membership exit codes: interior, boundary, exterior") {
    CHECK(run_cli("membership", R"({"domain":"tetra","point":[[0,0],[0,0],[0,0]]})").exit_code == 0);
    CHECK(run_cli("membership", R"({"domain":"tetra","point":[[1,0],[0,0],[0,0]]})").exit_code == 1);
    CHECK(run_cli("membership", R"({"domain":"tetra","point":[[2,0],[0,0],[0,0]]})").exit_code == 2);
}

TEST_CASE("membership reports the g2 beta witness") {
    const RunResult r =
        run_cli("membership", R"({"domain":"g2","point":[[1,0],[0.25,0]]})");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["overall"] == "interior");
    CHECK(j["witnesses"]["beta"][0].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("feasibility exit codes and the lambda0 != 0 gate") {
    const std::string feas =
        R"({"domain":"tetra","lambda0":[0.6,0],"point":[[0.3,0],[0,0],[0.2,0]]})";
    const std::string infeas =
        R"({"domain":"tetra","lambda0":[0.4,0],"point":[[0.3,0],[0,0],[0.2,0]]})";
    const std::string zero =
        R"({"domain":"tetra","lambda0":[0,0],"point":[[0.3,0],[0,0],[0.2,0]]})";
    CHECK(run_cli("feasibility", feas).exit_code == 0);
    CHECK(run_cli("feasibility", infeas).exit_code == 2);
    CHECK(run_cli("feasibility", zero).exit_code == 64);

    const Json j = Json::parse(run_cli("feasibility", feas).out);
    CHECK(j["feasible"] == "feasible");
    CHECK(j["conditions"].size() == 9);  // ids 2..10
}

TEST_CASE("lempert values through the CLI") {
    const RunResult zero =
        run_cli("lempert", R"({"domain":"tetra","point":[[0,0],[0,0],[0,0]]})");
    CHECK(zero.exit_code == 0);
    CHECK(Json::parse(zero.out)["lempert"].get<double>() == 0.0);

    const RunResult g2 =
        run_cli("lempert", R"({"domain":"g2","point":[[1,0],[0.25,0]]})");
    CHECK(g2.exit_code == 0);
    CHECK(Json::parse(g2.out)["lempert"].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));

    const RunResult outside =
        run_cli("lempert", R"({"domain":"tetra","point":[[2,0],[0,0],[0,0]]})");
    CHECK(outside.exit_code == 2);
}

TEST_CASE("interpolate then verify round-trips with identical margins") {
    const std::string req =
        R"({"domain":"tetra","lambda0":[0.6,0],"point":[[0.3,0],[0,0],[0.2,0]]})";
    const RunResult built = run_cli("interpolate", req);
    REQUIRE(built.exit_code == 0);
    const Json out = Json::parse(built.out);
    CHECK(out["report"]["verified"].get<bool>());

    Json verify_req = Json::parse(req);
    verify_req["disc"] = out["disc"];
    const RunResult verified = run_cli("verify", verify_req.dump());
    REQUIRE(verified.exit_code == 0);
    const Json rep = Json::parse(verified.out);
    CHECK(rep["verified"].get<bool>());
    CHECK(std::abs(rep["worst_membership_margin"].get<double>() -
                   out["report"]["worst_membership_margin"].get<double>()) <=
          1e-12);

    // infeasible problems surface as exit 2
    CHECK(run_cli("interpolate",
                  R"({"domain":"tetra","lambda0":[0.4,0],"point":[[0.3,0],[0,0],[0.2,0]]})")
              .exit_code == 2);
}

TEST_CASE("sweep: clean campaign exits 0 and reports zero genuine records") {
    const RunResult r = run_cli(
        "sweep", R"({"mode":"tetra_feasibility","n_samples":500,"seed":42})");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["summary"]["genuine_disagreements"].get<int>() == 0);

    const RunResult mutated = run_cli(
        "sweep",
        R"({"mode":"tetra_feasibility","n_samples":500,"seed":42,"mutate_condition":"8"})");
    CHECK(mutated.exit_code == 2);
    CHECK(Json::parse(mutated.out)["summary"]["genuine_disagreements"].get<int>() > 0);
}

TEST_CASE("malformed input exits 64") {
    CHECK(run_cli("membership", "{not json").exit_code == 64);
    CHECK(run_cli("membership", R"({"domain":"nope","point":[]})").exit_code == 64);
    CHECK(run_cli("membership", R"({"domain":"tetra","point":[[0,0],[0,0]]})").exit_code == 64);
    CHECK(run_cli("feasibility", R"({"domain":"tetra","point":[[0,0],[0,0],[0,0]]})").exit_code == 64);
}

TEST_CASE("MU_DOMAINS_TOL widens the boundary band") {
    const std::string near =
        R"({"domain":"tetra","point":[[0.9,0],[0,0],[0,0]]})";
    CHECK(run_cli("membership", near).exit_code == 0);  // interior by default
    CHECK(run_cli("membership", near, "MU_DOMAINS_TOL=0.2").exit_code == 1);
    // the --tol flag overrides the environment
    CHECK(run_cli("membership --tol 1e-9", near, "MU_DOMAINS_TOL=0.2").exit_code == 0);
}
