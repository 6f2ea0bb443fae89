#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modeq/polyfit.hpp"
#include "modeq/real.hpp"
#include "modeq/solver.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(MODEQ_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("solve emits a verifiable JSON record") {
    auto r = run_cli("solve --sig 3 --alpha 0.5 -p 2 --format json");
    CHECK(r.exit_code == 0);
    auto pair = modeq::modulus_pair_from_json(r.out);
    CHECK(pair.p == 2);
    CHECK(pair.precision_bits == 128);
    CHECK(std::abs(pair.beta.to_double() - 0.018875) < 1e-5);

    // round trip: re-serialized record equals the emitted text
    CHECK(modeq::to_json_string(pair) + "\n" == r.out);
}

TEST_CASE("solve trivial and error exits") {
    auto identity = run_cli("solve --sig 2 --alpha 0.5 -p 1 --format json");
    CHECK(identity.exit_code == 0);
    auto pair = modeq::modulus_pair_from_json(identity.out);
    CHECK(pair.beta == pair.alpha);

    CHECK(run_cli("solve --sig 3 --alpha 1.5 -p 2").exit_code == 2);
    CHECK(run_cli("solve --sig 3 --alpha 0.5 -p 2 --tol 1e-99").exit_code == 3);
    CHECK(run_cli("solve --alpha 0.5 -p 2").exit_code == 2);          // no theory given
    CHECK(run_cli("solve --sig 3 --alpha bogus -p 2").exit_code == 2);
    CHECK(run_cli("nonsense-command").exit_code == 2);
}

TEST_CASE("precision flag and environment override") {
    auto r = run_cli("solve --sig 3 --alpha 0.5 -p 2 --precision-bits 64 --format json");
    CHECK(modeq::modulus_pair_from_json(r.out).precision_bits == 64);

    auto env = run_cli("solve --sig 3 --alpha 0.5 -p 2 --format json");
    CHECK(modeq::modulus_pair_from_json(env.out).precision_bits == 128);

    setenv("MODEQ_PRECISION_BITS", "96", 1);
    auto env2 = run_cli("solve --sig 3 --alpha 0.5 -p 2 --format json");
    unsetenv("MODEQ_PRECISION_BITS");
    CHECK(modeq::modulus_pair_from_json(env2.out).precision_bits == 96);

    CHECK(run_cli("solve --sig 3 --alpha 0.5 -p 2 --precision-bits 10").exit_code == 2);
}

TEST_CASE("table matches the reference CSV") {
    auto r = run_cli("table 20");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "p,mu_sig2_and_4,mu_sig3\n"
          "2,2,3\n3,4,3\n4,4,6\n5,6,6\n6,8,9\n7,8,8\n8,8,12\n9,12,9\n10,12,18\n"
          "11,12,12\n12,16,18\n13,14,14\n14,16,24\n15,24,18\n16,16,24\n17,18,18\n"
          "18,24,27\n19,20,20\n20,24,36\n");

    auto one = run_cli("table 2");
    CHECK(one.out == "p,mu_sig2_and_4,mu_sig3\n2,2,3\n");

    CHECK(run_cli("table 1").exit_code == 2);

    auto js = run_cli("table 3 --format json");
    CHECK(js.exit_code == 0);
    auto arr = nlohmann::json::parse(js.out);
    CHECK(arr.is_array());
    CHECK(arr.size() == 4); // signatures 2 and 3 for p = 2, 3
}

TEST_CASE("psi mu and russell") {
    CHECK(run_cli("psi 12 --format text").out == "24\n");
    CHECK(run_cli("psi 0").exit_code == 2);
    CHECK(run_cli("mu -p 10 --sig 3 --format text").out == "18\n");
    CHECK(run_cli("mu -p 13 --sig 2 --format text").out == "14\n");
    CHECK(run_cli("mu -p 5 --sig 7").exit_code == 2);
    auto r = run_cli("russell -p 7 --sig 3 --format json");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["m"] == 8);
    CHECK(j["l"] == 3);
    CHECK(j["relation"] == "mu_eq_m");
    CHECK(run_cli("russell -p 8 --sig 3").exit_code == 2);
}

TEST_CASE("verify command") {
    auto ok = run_cli("verify --sig 3 -p 2 --which eq12 --count 4 --format json");
    CHECK(ok.exit_code == 0);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(j["pass"] == true);

    CHECK(run_cli("verify --sig 3 -p 2 --which multiplier --count 4").exit_code == 0);
    CHECK(run_cli("verify --sig 2 -p 3 --which fricke --count 4").exit_code == 0);
    CHECK(run_cli("verify --sig 2 -p 2 --which eq12 --count 4").exit_code == 2);
    CHECK(run_cli("verify --sig 3 -p 2 --which unknown").exit_code == 2);
}

TEST_CASE("polyfit reproduces the cubic in both formats") {
    auto js = run_cli("polyfit --sig 3 -p 2 --format json");
    CHECK(js.exit_code == 0);
    auto poly = modeq::BivariatePolynomial::from_json_string(js.out);
    CHECK(poly.mu() == 3);
    CHECK(poly.coeff(3, 3) == 8);
    CHECK(poly.coeff(0, 3) == -1);
    CHECK(poly.coeff(2, 2) == 39);

    auto text = run_cli("polyfit --sig 3 -p 2 --format text");
    CHECK(text.out.substr(0, 9) == "8*a^3*b^3");
}

TEST_CASE("hecke subcommands") {
    CHECK(run_cli("hecke mul \"[1 1; 0 1] lambda2=3\" \"[1 0; 1 1] lambda2=3\" --format text").out ==
          "[4 1; 1 1] lambda2=3\n");
    CHECK(run_cli("hecke inv \"[1 1; 0 1] lambda2=2\" --format text").out ==
          "[1 -1; 0 1] lambda2=2\n");
    CHECK(run_cli("hecke member \"[1 1; 0 1] lambda2=3\" -p 3 --format text").out == "true\n");
    CHECK(run_cli("hecke member \"[1 0; 1 1] lambda2=3\" -p 3 --format text").out == "false\n");
    CHECK(run_cli("hecke theta \"[1 1; 0 1] lambda2=3\" --format text").out == "[1 1; 0 1]\n");
    CHECK(run_cli("hecke fricke \"[1 1; 0 1] lambda2=2\" -p 2 --format text").out ==
          "[1 0; -2 1] lambda2=2\n");
    auto cosets = run_cli("hecke cosets 6 --psi-check --format json");
    auto j = nlohmann::json::parse(cosets.out);
    CHECK(j["index"] == 12);
    CHECK(j["psi"] == 12);
    CHECK(run_cli("hecke mul \"[1 1; 0 1] lambda2=3\"").exit_code == 2);
    CHECK(run_cli("hecke fricke \"[1 0; 1 1] lambda2=3\" -p 2").exit_code == 2);
    CHECK(run_cli("hecke cosets 20000").exit_code == 2);
}
