#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alsel/io.hpp"
#include "alsel/synthbench.hpp"
#include "cli.hpp"

namespace alsel {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "alsel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("alsel_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    SynthConfig cfg;
    cfg.samples_per_cluster = 12;
    cfg.outliers = 3;
    save_pool(generate_pool(cfg).pool, dir_ / "pool.manifest", "pool.bin");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string manifest() const { return (dir_ / "pool.manifest").string(); }
  fs::path dir_;
};

TEST_F(CliTest, LossPrintsTverskyValue) {
  const auto r = run_cli({"loss", "--pred", "0,0,2,2", "--gt", "1,1,3,3", "--kind", "tversky", "--alpha", "0.4",
                          "--beta", "0.6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0.75\n");
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, LossKindsGradAndTotal) {
  EXPECT_EQ(run_cli({"loss", "--pred", "0,0,2,2", "--gt", "1,1,3,3", "--kind", "iou"}).out, "0.85714285714285721\n");
  EXPECT_EQ(run_cli({"loss", "--pred", "0,0,2,2", "--gt", "1,1,3,3", "--kind", "jaccard"}).out,
            "0.85714285714285721\n");
  EXPECT_EQ(run_cli({"loss", "--pred", "0,0,2,2", "--gt", "1,1,3,3", "--kind", "dice"}).out, "0.75\n");
  const auto g = run_cli({"loss", "--pred", "0,0,2,2", "--gt", "1,1,3,3", "--grad", "--cl", "0.01"});
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("\ngrad -0.05"), std::string::npos);
  EXPECT_NE(g.out.find("\ntotal 1.75"), std::string::npos);
}

TEST_F(CliTest, LossErrors) {
  EXPECT_EQ(run_cli({"loss", "--pred", "0,0,2", "--gt", "1,1,3,3"}).code, 1);
  EXPECT_EQ(run_cli({"loss", "--pred", "2,0,0,2", "--gt", "1,1,3,3"}).code, 2);
  const auto degenerate = run_cli({"loss", "--pred", "1,1,1,1", "--gt", "1,1,1,1", "--kind", "iou"});
  EXPECT_EQ(degenerate.code, 2);
  EXPECT_NE(degenerate.err.find("DegeneratePair"), std::string::npos);
  EXPECT_TRUE(degenerate.out.empty());
  EXPECT_EQ(run_cli({"loss", "--pred", "0,0,2,2", "--gt", "1,1,3,3", "--kind", "huber"}).code, 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"select", "--manifest", manifest()}).code, 1);
  EXPECT_EQ(run_cli({"select", "--manifest", manifest(), "--budget", "3", "--out", "x", "--strategy", "fps"}).code,
            1);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, SelectWritesDeterministicFile) {
  for (const char* strategy : {"random", "sal", "mal", "kmal"}) {
    const auto a = (dir_ / (std::string(strategy) + "_a.sel")).string();
    const auto b = (dir_ / (std::string(strategy) + "_b.sel")).string();
    const std::vector<std::string> common{"select", "--manifest", manifest(), "--strategy", strategy, "--budget",
                                          "10", "--interval", "10", "--frames", "5", "--metric", "cosine",
                                          "--seed", "3"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"--out", a, "--threads", "1"});
    auto args_b = common;
    args_b.insert(args_b.end(), {"--out", b, "--threads", "4"});
    const auto ra = run_cli(args_a);
    ASSERT_EQ(ra.code, 0) << ra.err;
    ASSERT_EQ(run_cli(args_b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b)) << strategy;
    EXPECT_EQ(slurp(a).rfind(std::string("alsel-selection 1\nstrategy ") + strategy + "\nbudget 10\n", 0), 0u);
    EXPECT_NE(ra.out.find("selected 10\n"), std::string::npos);
  }
}

TEST_F(CliTest, SelectBudgetTooLargeIsDataError) {
  const auto r = run_cli({"select", "--manifest", manifest(), "--strategy", "kmal", "--budget", "999999", "--out",
                          (dir_ / "x.sel").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("BudgetExceedsPool"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "x.sel"));
}

TEST_F(CliTest, SelectMissingManifestIsDataError) {
  EXPECT_EQ(run_cli({"select", "--manifest", (dir_ / "nope").string(), "--budget", "1", "--out", "x"}).code, 2);
}

TEST_F(CliTest, OutputDirectoryOverride) {
  ::setenv(kOutputDirEnv, (dir_ / "outdir").c_str(), 1);
  const auto r = run_cli({"select", "--manifest", manifest(), "--strategy", "sal", "--budget", "2", "--out", "s.sel"});
  ::unsetenv(kOutputDirEnv);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "outdir" / "s.sel"));
}

TEST_F(CliTest, StatsReport) {
  const auto r = run_cli({"stats", "--manifest", manifest(), "--bins", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n 123\ndim 16\nreps multi\nmetric cosine\nave_d ", 0), 0u);
  EXPECT_NE(r.out.find("\nisolated "), std::string::npos);
  EXPECT_NE(r.out.find("\nhistogram 4 "), std::string::npos);
  EXPECT_NE(r.out.find("\nbin 3 "), std::string::npos);
}

TEST_F(CliTest, CsvManifestAccepted) {
  std::ofstream(dir_ / "p.csv") << "a,0,1,0\nb,0,0,1\nc,0,1,1\n";
  const auto r = run_cli({"stats", "--manifest", (dir_ / "p.csv").string(), "--reps", "first"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n 3\ndim 2\n", 0), 0u);
}

TEST_F(CliTest, BenchReportFile) {
  const auto out_a = (dir_ / "a.bench").string();
  const auto out_b = (dir_ / "b.bench").string();
  const auto ra = run_cli({"bench", "--clusters", "5", "--budget", "5", "--seeds", "4", "--samples", "10",
                           "--outliers", "2", "--out", out_a, "--threads", "1"});
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(run_cli({"bench", "--clusters", "5", "--budget", "5", "--seeds", "4", "--samples", "10", "--outliers",
                     "2", "--out", out_b, "--threads", "3"})
                .code,
            0);
  const auto text = slurp(out_a);
  EXPECT_EQ(text, slurp(out_b));
  EXPECT_EQ(text.rfind("alsel-bench 1\nconfig clusters=5 samples_per_cluster=10 ", 0), 0u);
  EXPECT_NE(text.find("\ncell strategy=kmal budget=5 seed=3 "), std::string::npos);
  EXPECT_NE(ra.out.find("kmal budget=5 coverage_rate="), std::string::npos);
}

}  // namespace
}  // namespace alsel
