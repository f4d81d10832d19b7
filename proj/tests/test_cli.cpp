#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

#include "braidqm/gambaudo_ghys.hpp"
#include "braidqm/reeb_tree.hpp"

using nlohmann::json;
using std::numbers::pi;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::string& args, const std::string& env = "") {
    const std::string err_path = ::testing::TempDir() + "braidqm_cli_stderr.txt";
    const std::string cmd = env + " " BRAIDQM_CLI " " + args + " 2>" + err_path;
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, "", "popen failed"};
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream e(err_path);
    std::stringstream ss;
    ss << e.rdbuf();
    r.err = ss.str();
    return r;
}

std::string data(const std::string& f) { return std::string(BRAIDQM_DATA) + "/" + f; }

} // namespace

TEST(Cli, InvariantOfTheTrefoil) {
    const CliRun r = run("invariant --braid \"1 1 1\" --n 2 --theta 1/2");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["raw_signature"], -2);
    EXPECT_EQ(j["kappa"], -1);
    EXPECT_EQ(j["signature"], 2);
    EXPECT_EQ(j["determinant"], 3);
    EXPECT_EQ(j["s"]["exact"], 2);
    EXPECT_EQ(j["tau"]["exact"], "1");
    EXPECT_EQ(j["omega_signature"]["nullity"], 0);
}

TEST(Cli, InvariantOfALinkHasNoSliceData) {
    const CliRun r = run("invariant --braid \"1 1\" --theta 1/3");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["components"], 2);
    EXPECT_TRUE(j["s"].is_null());
    EXPECT_EQ(j["determinant"], 2);
}

TEST(Cli, EtaTable) {
    EXPECT_EQ(run("eta-table --i 3 --theta 1/2").out, "2\n");
    EXPECT_EQ(run("eta-table --i 2 --theta 1/2").out, "2\n");
    EXPECT_EQ(run("eta-table --torus --i 3 --theta 1/5").out, "12/5\n");
    const CliRun t = run("eta-table --imax 4 --den 4");
    ASSERT_EQ(t.code, 0);
    EXPECT_EQ(t.out.substr(0, t.out.find('\n')), "i,theta,eta_omega_tilde,eta_sign_tilde");
    EXPECT_NE(t.out.find("\n3,1/2,2,2\n"), std::string::npos);
}

TEST(Cli, BasisIsLowerTriangular) {
    const json j = json::parse(run("basis --n 6").out);
    EXPECT_TRUE(j["lower_triangular"].get<bool>());
    EXPECT_EQ(j["diagonal"], json::parse(R"(["2", "-4", "-4", "-4", "-4"])"));
}

TEST(Cli, GGIntegrateSingleEdge) {
    const CliRun r = run("gg-integrate --tree " + data("single_edge.json") + " --n 2 --phi sign");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_NEAR(j["gg_integral"].get<double>(), -2.0 * pi * pi, 1e-12);
    EXPECT_NEAR(j["calabi"].get<double>(), -pi / 2.0, 1e-12);
    EXPECT_NEAR(j["sign_gg_closed"].get<double>(), -2.0 * pi * pi, 1e-12);
}

TEST(Cli, AsymptoticsSweep) {
    const CliRun r = run("asymptotics --tree " + data("single_edge.json") + " --nmax 5");
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,ratio,calabi,bound");
    int rows = 0;
    while (std::getline(in, line)) {
        double n, ratio, c, bound;
        char comma;
        std::istringstream f(line);
        f >> n >> comma >> ratio >> comma >> c >> comma >> bound;
        EXPECT_LE(std::abs(ratio - c), bound) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 4);
}

TEST(Cli, ReebExtractRoundTrips) {
    const CliRun r = run("reeb-extract --grid " + data("radial_bump_41.grid"));
    ASSERT_EQ(r.code, 0) << r.err;
    const braidqm::ReebTree t = braidqm::reeb_tree_from_json(json::parse(r.out));
    const braidqm::ReebTree exact = braidqm::radial_tree(braidqm::RadialProfile::bump(1.0, 0.9));
    EXPECT_NEAR(braidqm::calabi(t), braidqm::calabi(exact), 0.05 * std::abs(braidqm::calabi(exact)));
}

TEST(Cli, OutputIsReproducible) {
    const std::string sim = "simulate --N 40 --p 1 --dt 5e-3 --seed 11";
    const CliRun a = run(sim), b = run(sim);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)["seed"], 11);
    const std::string def = "defect --phi sign --n 3 --trials 30 --seed 5";
    EXPECT_EQ(run(def).out, run(def).out);
    EXPECT_EQ(run(def + " --threads 2").out, run(def).out);
}

TEST(Cli, SeedFromEnvironment) {
    const CliRun a = run("defect --phi lk --trials 5", "BRAIDQM_SEED=77");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(json::parse(a.out)["seed"], 77);
    EXPECT_EQ(json::parse(a.out)["max_defect"], 0.0);
    EXPECT_EQ(run("defect --phi lk --trials 5", "BRAIDQM_SEED=oops").code, 2);
}

TEST(Cli, ErrorsAreSingleLineRecords) {
    for (const char* args : {"invariant --braid \"1 x\"", "eta-table --i 1 --theta 1/2", "bogus",
                             "gg-integrate --tree /nonexistent.json", "homogenize --braid \"1\" --phi nope"}) {
        const CliRun r = run(args);
        EXPECT_EQ(r.code, 2) << args;
        EXPECT_TRUE(r.out.empty()) << args;
        ASSERT_FALSE(r.err.empty()) << args;
        EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << args;
        const json j = json::parse(r.err);
        EXPECT_EQ(j["error"], "invalid_input") << args;
    }
}

TEST(Cli, NumericalFaultExitCode) {
    // a coarse step on a steep bump makes the integrator throw points out of the disc
    const CliRun r = run("simulate --bump-a 1000 --dt 0.05 --N 3 --seed 1");
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(json::parse(r.err)["error"], "numerical_fault");
    EXPECT_EQ(run("simulate --radial 1,0 --cutoff 0.5 --N 3").code, 2);
}
