#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hetnet/cli.hpp"

using namespace hetnet;
using namespace hetnet::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome runCli(std::vector<std::string> args) {
    args.insert(args.begin(), "hetnet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratchDir(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("hetnet_cli_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream s(text);
    for (std::string l; std::getline(s, l);) v.push_back(l);
    return v;
}

std::size_t fieldCount(const std::string& row) { return std::size_t(std::count(row.begin(), row.end(), ',')) + 1; }

// Comments first, then a header and rows of equal width without NaN/inf.
void checkTable(const std::string& text, const std::string& firstColumn) {
    const auto ls = lines(text);
    std::size_t i = 0;
    while (i < ls.size() && ls[i].rfind("# ", 0) == 0) ++i;
    REQUIRE(i >= 3);
    CHECK(ls[0].find("# tool: hetnet ") == 0);
    CHECK(text.find("# config_hash: ") != std::string::npos);
    REQUIRE(i + 1 < ls.size());
    CHECK(ls[i].rfind(firstColumn, 0) == 0);
    const auto width = fieldCount(ls[i]);
    for (std::size_t r = i + 1; r < ls.size(); ++r) {
        CHECK(fieldCount(ls[r]) == width);
        CHECK(ls[r].find("nan") == std::string::npos);
        CHECK(ls[r].find("inf,") == std::string::npos);
    }
}

}  // namespace

TEST_CASE("grid specifications") {
    CHECK(parseGrid("0:0.25:1") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(parseGrid("-10:5:10").size() == 5);
    CHECK(parseGrid("1,3,5") == std::vector<double>{1, 3, 5});
    CHECK(parseGrid("7") == std::vector<double>{7});
    CHECK(parseGrid("0:0.1:1").size() == 11);
    CHECK_THROWS_AS(parseGrid("3,1"), UsageError);
    CHECK_THROWS_AS(parseGrid("1,1"), UsageError);
    CHECK_THROWS_AS(parseGrid("1:0:5"), UsageError);
    CHECK_THROWS_AS(parseGrid("5:1:1"), UsageError);
    CHECK_THROWS_AS(parseGrid("1:2"), UsageError);
    CHECK_THROWS_AS(parseGrid("a,b"), UsageError);
    CHECK_THROWS_AS(parseGrid(""), UsageError);
    CHECK_THROWS_AS(parseGrid("1,nan"), UsageError);
}

TEST_CASE("output lists and sweep parameters") {
    CHECK(parseOutputs("se,coverage,se") == std::vector<Output>{Output::Se, Output::Coverage});
    CHECK_THROWS_AS(parseOutputs("coverage,sinr"), UsageError);
    CHECK(parseSweepParameter("probX2") == SweepParameter::ProbX2);
    CHECK(parseSweepParameter("lambda2") == SweepParameter::Lambda2);
    CHECK_THROWS_AS(parseSweepParameter("alpha"), UsageError);

    ModelConfig cfg;
    applySweepValue(cfg, SweepParameter::ProbX2, 0.3, UnitSystem::Paper);
    CHECK(cfg.mobility.probX2Conv == 0.3);
    CHECK(cfg.mobility.probX2Split == 0.3);
    applySweepValue(cfg, SweepParameter::Lambda2, 20, UnitSystem::Paper);
    CHECK(cfg.network.lambda2 == doctest::Approx(20e-6));
    applySweepValue(cfg, SweepParameter::Lambda2, 2e-5, UnitSystem::SI);
    CHECK(cfg.network.lambda2 == doctest::Approx(2e-5));
}

TEST_CASE("analyze writes every table with metadata") {
    const auto d = scratchDir("analyze");
    const auto r = runCli({"analyze", "--out", d.string(), "--turning-points", "11"});
    REQUIRE(r.code == kOk);
    checkTable(slurp(d / "coverage.csv"), "theta_db,");
    checkTable(slurp(d / "se.csv"), "link,");
    checkTable(slurp(d / "throughput.csv"), "at_conv_");
    checkTable(slurp(d / "handover.csv"), "lambda2_per_km2,");
    checkTable(slurp(d / "feasibility.csv"), "gamma,");
    CHECK(lines(slurp(d / "coverage.csv")).size() == 4 + 1 + 31);

    const auto si = scratchDir("analyze_si");
    REQUIRE(runCli({"analyze", "--out", si.string(), "--units", "si", "--outputs", "handover", "--lambda2-grid",
                    "0,1e-5"})
                .code == kOk);
    const auto h = slurp(si / "handover.csv");
    CHECK(h.find("lambda2_per_m2,") != std::string::npos);
    CHECK(lines(h).back().rfind("1e-05,", 0) == 0);
}

TEST_CASE("sweep rows, crossover column and markers") {
    const auto d = scratchDir("sweep");
    std::ofstream(d / "moving.ini") << "[mobility]\nvelocity = 60\n";
    const auto r = runCli({"sweep", "--config", (d / "moving.ini").string(), "--param", "lambda2", "--grid",
                           "1,5,20,100", "--outputs", "throughput,coverage,handover", "--out", d.string()});
    REQUIRE(r.code == kOk);
    const auto text = slurp(d / "sweep_lambda2.csv");
    checkTable(text, "lambda2_per_km2,");
    const auto ls = lines(text);
    CHECK(ls.back().rfind("100,", 0) == 0);
    CHECK(ls[0].find("crossover") == std::string::npos);
    for (const auto& l : ls)
        if (l.rfind("#", 0) != 0 && l.rfind("lambda2", 0) != 0)
            CHECK((l.substr(l.rfind(',') + 1) == "yes" || l.substr(l.rfind(',') + 1) == "no"));
}

TEST_CASE("exit codes") {
    const auto d = scratchDir("codes");
    CHECK(runCli({}).code == kUsage);
    CHECK(runCli({"frobnicate"}).code == kUsage);
    CHECK(runCli({"analyze", "--units", "imperial"}).code == kUsage);
    CHECK(runCli({"sweep", "--param", "lambda2", "--grid", "3,1", "--out", d.string()}).code == kUsage);
    CHECK(runCli({"sweep", "--param", "alpha", "--grid", "3", "--out", d.string()}).code == kUsage);
    CHECK(runCli({"analyze", "--help"}).code == kOk);
    CHECK(runCli({"--version"}).code == kOk);

    const auto missing = runCli({"analyze", "--config", (d / "absent.ini").string(), "--out", d.string()});
    CHECK(missing.code == kModelFailure);
    CHECK(missing.err.find("error:") == 0);

    std::ofstream(d / "bad.ini") << "[network]\nlambda1 = -3\n";
    CHECK(runCli({"analyze", "--config", (d / "bad.ini").string(), "--out", d.string()}).code == kModelFailure);
    std::ofstream(d / "unknown.ini") << "[network]\nlambda9 = 3\n";
    CHECK(runCli({"analyze", "--config", (d / "unknown.ini").string(), "--out", d.string()}).code == kModelFailure);
}

TEST_CASE("small validation runs are low-confidence and reproducible") {
    const auto a = scratchDir("validate_a");
    const auto b = scratchDir("validate_b");
    const std::vector<std::string> common{"validate", "--realizations", "10", "--transect-events", "50", "--seed", "9"};
    auto argsA = common, argsB = common;
    argsA.insert(argsA.end(), {"--out", a.string(), "--threads", "1"});
    argsB.insert(argsB.end(), {"--out", b.string(), "--threads", "2"});
    const auto ra = runCli(argsA);
    const auto rb = runCli(argsB);
    CHECK(ra.code == kOk);
    CHECK(rb.code == kOk);
    const auto json = slurp(a / "validation.json");
    CHECK(json.find("\"status\": \"low-confidence\"") != std::string::npos);
    CHECK(json == slurp(b / "validation.json"));
    CHECK(slurp(a / "validation.txt") == slurp(b / "validation.txt"));
    CHECK(fs::exists(a / "ccdf_conv_small.csv"));
    CHECK(slurp(a / "ccdf_conv_small.csv") == slurp(b / "ccdf_conv_small.csv"));
    CHECK_FALSE(fs::exists(a / "ccdf_conv_macro.csv"));
}

TEST_CASE("a confident validation that misses its tolerance exits with 3") {
    const auto d = scratchDir("validate_fail");
    std::ofstream(d / "sparse.ini") << "[network]\nlambda2 = 5\n";
    const auto r = runCli({"validate", "--config", (d / "sparse.ini").string(), "--realizations", "100",
                           "--transect-events", "50", "--coverage-tolerance", "0", "--out", d.string()});
    CHECK(r.code == kValidationFailure);
    CHECK(slurp(d / "validation.json").find("\"status\": \"fail\"") != std::string::npos);
}
