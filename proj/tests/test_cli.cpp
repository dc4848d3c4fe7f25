#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "posthoc/serialize.hpp"

using namespace posthoc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path source_dir() {
  const char* dir = std::getenv("POSTHOC_SOURCE_DIR");
  return dir != nullptr && *dir != '\0' ? fs::path(dir) : fs::path(POSTHOC_SOURCE_DIR);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv(cli::kBackendEnv);
    dir_ = fs::temp_directory_path() /
           ("posthoc-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override {
    unsetenv(cli::kBackendEnv);
    fs::remove_all(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

}  // namespace

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(cli::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(cli::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"audit", "--rho", "median"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"audit", "--seed", "abc"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"audit", "--config", path("missing.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"counterexample", "bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"evalue"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitPass);
}

TEST_F(Cli, ExpectationAuditPasses) {
  const auto r = run({"audit", "--rho", "expectation", "--suite-size", "20"});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["backend"], "rational");
  EXPECT_EQ(j["config_hash"].get<std::string>().size(), 16u);
}

TEST_F(Cli, EssSupAndScaledLossAuditsFail) {
  const auto esssup = run({"audit", "--rho", "esssup", "--suite-size", "0"});
  EXPECT_EQ(esssup.code, cli::kExitFail);
  EXPECT_EQ(esssup.json()["passed"], false);
  EXPECT_EQ(run({"audit", "--loss-scale", "1.1", "--suite-size", "0", "--skip-builtin"}).code, cli::kExitFail);
  EXPECT_EQ(run({"audit", "--loss-scale", "0.9", "--suite-size", "0", "--skip-builtin"}).code, cli::kExitFail);
}

TEST_F(Cli, CsvNestingGrid) {
  const auto r = run({"audit", "--format", "csv", "--skip-builtin"});
  ASSERT_EQ(r.code, cli::kExitPass);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "alpha,p,score,general_valid,classically_valid");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 99u * 101u);
}

TEST_F(Cli, BackendPrecedenceFlagThenEnvThenConfig) {
  setenv(cli::kBackendEnv, "double", 1);
  EXPECT_EQ(run({"evalue", "--builtin", "never-reject"}).json()["backend"], "double");
  EXPECT_EQ(run({"evalue", "--builtin", "never-reject", "--backend", "rational"}).json()["backend"], "rational");
  setenv(cli::kBackendEnv, "quad", 1);
  EXPECT_EQ(run({"evalue", "--builtin", "never-reject"}).code, cli::kExitUsage);
  unsetenv(cli::kBackendEnv);
  const auto config = (source_dir() / "configs" / "likelihood_ratio.json").string();
  auto j = Json::parse(std::ifstream(config));
  j["backend"] = "double";
  write("lr.json", j.dump());
  EXPECT_EQ(run({"evalue", "--config", path("lr.json")}).json()["backend"], "double");
}

TEST_F(Cli, EssSupCounterexampleIsFoundAndRechecked) {
  const auto r = run({"counterexample", "esssup", "--atoms", "1000"});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["counterexample_found"], true);
  EXPECT_EQ(j["details"]["score_conservative"], "50");
  EXPECT_EQ(j["details"]["conservative_dominates_fixed"], true);
}

TEST_F(Cli, SupercriticalCounterexampleDetails) {
  const auto r = run({"counterexample", "supercritical", "--ybar", "0.5,2.0", "--a", "0.2", "--delta", "0.1",
                      "--rho", "quantile(0.5)"});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["details"]["event_probability"], "183/800");
  EXPECT_EQ(j["details"]["profile_identity"], true);
  EXPECT_EQ(run({"counterexample", "subcritical", "--ybar", "0.5,2.0"}).code, cli::kExitUsage);
}

TEST_F(Cli, ScenarioRoundTripKeepsTheConfigHash) {
  const auto cx = run({"counterexample", "subcritical", "--ybar", "0.4,1.2", "--a", "0.1", "--delta", "0.25",
                       "--rho", "esssup", "--scenario-out", path("emitted.json")});
  ASSERT_EQ(cx.code, cli::kExitPass) << cx.err;
  const auto emitted = Json::parse(read("emitted.json"));
  EXPECT_EQ(emitted, cx.json()["scenario"]);

  // Re-ingest, re-serialize with different layout, and audit both files.
  const auto canonical = scenario_to_json(scenario_from_json<Rational>(emitted));
  EXPECT_EQ(canonical, emitted);
  write("reformatted.json", canonical.dump(8));
  const std::vector<std::string> tail{"--suite-size", "0", "--skip-builtin"};
  auto first = std::vector<std::string>{"audit", "--config", path("emitted.json")};
  auto second = std::vector<std::string>{"audit", "--config", path("reformatted.json")};
  first.insert(first.end(), tail.begin(), tail.end());
  second.insert(second.end(), tail.begin(), tail.end());
  const auto a = run(first);
  const auto b = run(second);
  EXPECT_EQ(a.code, cli::kExitFail);
  EXPECT_EQ(b.code, cli::kExitFail);
  EXPECT_EQ(a.json()["config_hash"], b.json()["config_hash"]);
  EXPECT_NE(a.json()["config_hash"], run({"audit", "--suite-size", "0", "--skip-builtin"}).json()["config_hash"]);
}

TEST_F(Cli, RecheckReproducesAuditFailures) {
  ASSERT_EQ(run({"audit", "--rho", "quantile(0.9)", "--suite-size", "20", "--out", path("report.json")}).code,
            cli::kExitFail);
  const auto r = run({"recheck", "--report", path("report.json")});
  ASSERT_EQ(r.code, cli::kExitPass) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j["passed"], true);
  EXPECT_FALSE(j["rechecked"].empty());
}

TEST_F(Cli, MeanLevelComparatorConfigFails) {
  const auto config = (source_dir() / "configs" / "mean_level_comparator.json").string();
  const auto r = run({"audit", "--config", config, "--suite-size", "0", "--skip-builtin"});
  EXPECT_EQ(r.code, cli::kExitFail) << r.err;
}

TEST_F(Cli, EValueBuiltins) {
  const auto lr = run({"evalue", "--builtin", "likelihood-ratio"});
  ASSERT_EQ(lr.code, cli::kExitPass) << lr.err;
  EXPECT_EQ(lr.json()["expected_evalue"], "1");
  EXPECT_EQ(run({"evalue", "--builtin", "pvalue"}).code, cli::kExitFail);
  EXPECT_EQ(run({"evalue", "--builtin", "never-reject"}).code, cli::kExitPass);
  EXPECT_EQ(run({"evalue", "--builtin", "reject-on-event"}).code, cli::kExitFail);
  const auto csv = run({"evalue", "--builtin", "pvalue", "--atoms", "4", "--format", "csv"});
  EXPECT_EQ(csv.out, "outcome,mass,kappa,evidence\np1,1/4,1/4,4\np2,1/4,1/2,2\np3,1/4,3/4,4/3\np4,1/4,1,0\n");
}

TEST_F(Cli, RandomizedFamiliesAreRefused) {
  write("coupled.json", R"({"schema": "posthoc-lab/scenario/v1",
    "space": {"outcomes": ["a", "b"], "mass": [0.5, 0.5]},
    "family": {"form": "coupled", "r": [0.3, 0]}})");
  const auto r = run({"evalue", "--config", path("coupled.json")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("refused"), std::string::npos);
}

TEST_F(Cli, SuppliedEvidenceIsChecked) {
  write("e.json", R"({"evidence": {"p1": 2, "p2": 1, "p3": "inf", "p4": 0}})");
  EXPECT_EQ(run({"evalue", "--builtin", "never-reject", "--atoms", "4", "--evidence", path("e.json")}).code,
            cli::kExitUsage);
  write("e.json", R"({"evidence": {"x1": 2, "x2": 1, "x3": 0.5, "x4": 0}})");
  const auto ok = run({"evalue", "--builtin", "never-reject", "--atoms", "4", "--evidence", path("e.json")});
  EXPECT_EQ(ok.code, cli::kExitPass) << ok.err;
  EXPECT_EQ(ok.json()["supplied_evidence"]["expected"], "7/8");
  write("e.json", R"({"evidence": {"x1": 4, "x2": 1, "x3": 0.5, "x4": 0}})");
  const auto bad = run({"evalue", "--builtin", "never-reject", "--atoms", "4", "--evidence", path("e.json")});
  EXPECT_EQ(bad.code, cli::kExitFail) << bad.err;
  EXPECT_EQ(bad.json()["supplied_evidence"]["valid"], false);
}
