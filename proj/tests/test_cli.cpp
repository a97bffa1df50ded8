#include "cli_app.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code = 0;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "liequant");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = liequant::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("liequant_test_" + name);
    std::ofstream(p) << content;
    return p;
}

} // namespace

TEST(Cli, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* sub : {"rotate", "cover-check", "assign", "blackbody", "highest-weight"})
        EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    const auto w = run({"wien", "--help"});
    EXPECT_EQ(w.code, 0);
    EXPECT_NE(w.out.find("3 - x"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    EXPECT_EQ(run({"gibbs"}).code, 2);
    const auto r = run({"rydberg", "--kmax", "abc"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("usage error"), std::string::npos);
}

TEST(Cli, DomainErrorsPrintToken) {
    const auto r = run({"highest-weight", "--u", "-1", "--v", "0", "--alpha", "0.3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error: no_unitary_rep", 0), 0u) << r.err;
    const auto s = run({"rydberg", "--kmax", "1"});
    EXPECT_EQ(s.code, 1);
    EXPECT_EQ(s.err.rfind("error: too_few", 0), 0u);
    const auto b = run({"irrep", "--j", "0.3"});
    EXPECT_EQ(b.code, 1);
    EXPECT_EQ(b.err.rfind("error: bad_spin", 0), 0u);
}

TEST(Cli, Wien) {
    const auto r = run({"wien"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_NEAR(j["x"].get<double>(), 2.8214393721220787, 1e-14);
    EXPECT_LE(j["residual"].get<double>(), 1e-14);
    const auto t = run({"wien", "--T", "300"}).json();
    EXPECT_GT(t["omega_max"].get<double>(), 0.0);
}

TEST(Cli, StefanAndNaturalUnits) {
    const auto j = run({"stefan"}).json();
    EXPECT_GT(j["sigma"].get<double>(), 5.6e-8);
    EXPECT_LT(j["sigma"].get<double>(), 5.8e-8);
    const auto n = run({"stefan", "--natural"}).json();
    EXPECT_NEAR(n["sigma"].get<double>(), std::numbers::pi * std::numbers::pi / 60.0, 1e-15);
}

TEST(Cli, CoverCheckDeterministic) {
    const auto a = run({"cover-check", "--samples", "1000", "--seed", "7"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, run({"cover-check", "--samples", "1000", "--seed", "7"}).out);
    EXPECT_LE(a.json()["homomorphism_defect"].get<double>(), 1e-10);
}

TEST(Cli, SeedFromEnvironment) {
    ::setenv("LIEQUANT_SEED", "7", 1);
    const auto env = run({"cover-check", "--samples", "50"});
    ::unsetenv("LIEQUANT_SEED");
    EXPECT_EQ(env.out, run({"cover-check", "--samples", "50", "--seed", "7"}).out);
    EXPECT_NE(env.out, run({"cover-check", "--samples", "50", "--seed", "8"}).out);
}

TEST(Cli, RotateAndEuler) {
    const auto r = run({"rotate", "--axis", "z", "--angle", "1.5707963267948966", "--apply", "1,0,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto applied = r.json()["rotated"];
    EXPECT_NEAR(applied[0].get<double>(), 0.0, 1e-15);
    EXPECT_NEAR(applied[1].get<double>(), 1.0, 1e-15);
    const auto e = run({"euler", "--axis", "y", "--angle", "0.4"});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_NEAR(e.json()["beta"].get<double>(), 0.4, 1e-14);
}

TEST(Cli, AlgebraVerify) {
    const auto r = run({"algebra-verify", "--all"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("so3"), std::string::npos);
    const auto u = run({"algebra-verify", "--name", "e8"});
    EXPECT_EQ(u.code, 1);
    EXPECT_EQ(u.err.rfind("error: unknown_algebra", 0), 0u);
}

TEST(Cli, RigidBodyCsv) {
    const auto r = run({"rigidbody", "--I", "1,2,3", "--J", "1,1,1", "--dt", "0.001", "--steps", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,J1,J2,J3,E,Jsq");
}

TEST(Cli, FockFermionIrrepCg) {
    const auto f = run({"fermion-check", "--modes", "4"}).json();
    EXPECT_EQ(f["car_residual"].get<double>(), 0.0);
    EXPECT_EQ(f["dim"].get<int>(), 16);
    const auto cg = run({"cg", "--k", "1", "--l", "0.5"});
    ASSERT_EQ(cg.code, 0) << cg.err;
    EXPECT_NE(cg.out.find("1.5"), std::string::npos);
    const auto hw = run({"highest-weight", "--u", "-1", "--v", "0", "--jm", "3"});
    ASSERT_EQ(hw.code, 0) << hw.err;
    EXPECT_EQ(hw.json()["dim"].get<int>(), 4);
    const auto c = run({"coherent", "--lambda", "1", "--z", "0.3,0.2", "--dim", "60"});
    ASSERT_EQ(c.code, 0) << c.err;
}

TEST(Cli, GibbsAndBlackbody) {
    const auto g = run({"gibbs", "--H", "[[0,0],[0,1]]", "--beta", "1"});
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_NEAR(g.json()["Z"].get<double>(), 1.0 + std::exp(-1.0), 1e-14);
    const auto b = run({"blackbody", "--T", "300", "--points", "5"});
    ASSERT_EQ(b.code, 0) << b.err;
    std::istringstream in(b.out);
    std::string line;
    int rows = 0;
    std::getline(in, line);
    EXPECT_EQ(line, "omega,f_omega");
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 5);
}

TEST(Cli, AssignFromFiles) {
    const auto data = temp_file("lines.csv", "omega,weight\n1.0,1\n1.5,1\n2.5,1\n");
    const auto levels = temp_file("levels.json", "[0, 1.05, 2.45]");
    const auto r = run({"assign", "--data", data.string(), "--levels", levels.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    EXPECT_LE(j["objective"].get<double>(), 1e-20);
    EXPECT_NEAR(j["levels"][2].get<double>(), 2.5, 1e-10);
    ASSERT_EQ(j["assignments"].size(), 3u);
    EXPECT_EQ(j["assignments"][0], nlohmann::json::array({0, 1, 0}));
    const auto bad = temp_file("bad.csv", "omega,weight\n-1,1\n");
    EXPECT_EQ(run({"assign", "--data", bad.string(), "--levels", "[0,1]"}).code, 1);
    std::filesystem::remove(data);
    std::filesystem::remove(levels);
    std::filesystem::remove(bad);
}

TEST(Cli, OutFlagWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "liequant_test_out.json";
    const auto r = run({"--out", path.string(), "rydberg", "--kmax", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["lines"].size(), 3u);
    std::filesystem::remove(path);
}
