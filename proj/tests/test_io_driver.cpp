// End-to-end checks of the command-line driver: deterministic output,
// file round-trips, budget markers, and error reporting.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

using Json = nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path =
        testing::TempDir() + "modrep_cli_" + std::to_string(counter++) + ".txt";
    std::string cmd =
        std::string(MODREP_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

TEST(CliDriver, ReportsAreByteIdenticalAcrossRuns) {
    std::string j1 = testing::TempDir() + "run1.json";
    std::string j2 = testing::TempDir() + "run2.json";
    RunResult a =
        run_cli("kernel --model 2,5 --emit-generators --json " + j1);
    RunResult b =
        run_cli("kernel --model 2,5 --emit-generators --json " + j2);
    ASSERT_EQ(a.code, 0) << a.out;
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(slurp(j1), slurp(j2));
    EXPECT_FALSE(slurp(j1).empty());
}

TEST(CliDriver, FileInputMatchesDirectConstruction) {
    std::string data = testing::TempDir() + "ly.json";
    std::string jm = testing::TempDir() + "from_model.json";
    std::string jf = testing::TempDir() + "from_file.json";
    ASSERT_EQ(run_cli("analyze --model 2,5 --save " + data).code, 0);
    ASSERT_EQ(run_cli("kernel --model 2,5 --json " + jm).code, 0);
    ASSERT_EQ(run_cli("kernel --input " + data + " --json " + jf).code, 0);
    Json a = Json::parse(slurp(jm));
    Json b = Json::parse(slurp(jf));
    a.erase("source");
    b.erase("source");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.at("kernel_order"), "192");
    EXPECT_EQ(a.at("schema_version"), "1");
}

TEST(CliDriver, OverBudgetRowsAreMarkedNeverGuessed) {
    std::string jt = testing::TempDir() + "table.json";
    RunResult r = run_cli("table 3,8 7,11 --budget 30000 --json " + jt);
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("skipped-budget"), std::string::npos);
    Json j = Json::parse(slurp(jt));
    ASSERT_EQ(j.at("rows").size(), 2u);
    EXPECT_EQ(j["rows"][0].at("status"), "computed");
    EXPECT_EQ(j["rows"][0].at("index"), "4");
    EXPECT_EQ(j["rows"][1].at("status"), "skipped-budget");
    EXPECT_EQ(j["rows"][1].at("index"), "-");
    EXPECT_EQ(j["rows"][1].at("conductor"), "1848");
    EXPECT_EQ(j["rows"][1].at("ratio"), "6");
}

TEST(CliDriver, GaloisTableShape) {
    std::string jg = testing::TempDir() + "galois.json";
    ASSERT_EQ(run_cli("galois --model 2,5 --json " + jg).code, 0);
    Json j = Json::parse(slurp(jg));
    ASSERT_EQ(j.at("rows").size(), 16u);  // phi(60)
    for (const auto& row : j["rows"]) {
        EXPECT_TRUE(row.at("t_check").get<bool>());
        EXPECT_EQ(row.at("signs").get<std::string>().size(), 2u);
    }
}

// A tampered exponent is rejected at load; with validation off, the suites
// run anyway and report the violations instead of crashing.
TEST(CliDriver, CorruptedExponentsFailTheSuites) {
    std::string data = testing::TempDir() + "ly_good.json";
    std::string bad = testing::TempDir() + "ly_bad.json";
    ASSERT_EQ(run_cli("analyze --model 2,5 --save " + data).code, 0);
    Json j = Json::parse(slurp(data));
    j["t_exponents"][1] = {"7", "60"};
    {
        std::ofstream f(bad);
        f << j.dump(2) << "\n";
    }
    EXPECT_EQ(run_cli("verify --input " + bad).code, 2);
    RunResult r =
        run_cli("verify --input " + bad + " --no-validate --budget 100");
    EXPECT_EQ(r.code, 1) << r.out;
    EXPECT_NE(r.out.find("[FAIL]"), std::string::npos);
    EXPECT_NE(r.out.find("galois-action"), std::string::npos);
}

TEST(CliDriver, UsageAndDataErrors) {
    EXPECT_NE(run_cli("kernel").code, 0);                       // no source
    EXPECT_NE(run_cli("kernel --model 2,5 --input x.json").code, 0);
    EXPECT_EQ(run_cli("analyze --input /nonexistent.json").code, 2);
    EXPECT_NE(run_cli("kernel --model 2,5 --budget abc").code, 0);
    RunResult bad = run_cli("analyze --model 4,6");  // not coprime
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("error:"), std::string::npos);
}

}  // namespace
