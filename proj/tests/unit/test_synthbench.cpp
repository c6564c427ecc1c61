#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "alsel/distance.hpp"
#include "alsel/fusion.hpp"
#include "alsel/synthbench.hpp"

namespace alsel {
namespace {

/// C(n, r) / C(m, r) as a running product; exact enough for small r.
double choose_ratio(double n, double m, std::size_t r) {
  double out = 1.0;
  for (std::size_t i = 0; i < r; ++i) out *= (n - static_cast<double>(i)) / (m - static_cast<double>(i));
  return out;
}

/// Expected distinct clusters hit by `budget` uniform draws without
/// replacement: each of k clusters is missed with probability
/// C(N - s, B) / C(N, B).
double expected_random_coverage(const SynthConfig& cfg, std::size_t budget) {
  const double total = static_cast<double>(cfg.clusters * cfg.samples_per_cluster + cfg.outliers);
  const double miss = choose_ratio(total - static_cast<double>(cfg.samples_per_cluster), total, budget);
  return static_cast<double>(cfg.clusters) * (1.0 - miss);
}

TEST(GeneratePool, CountsAndLabels) {
  SynthConfig cfg;
  cfg.clusters = 10;
  cfg.dim = 16;
  cfg.samples_per_cluster = 40;
  cfg.outliers = 5;
  const auto synth = generate_pool(cfg);
  EXPECT_EQ(synth.pool.size(), 405u);
  ASSERT_EQ(synth.labels.size(), 405u);
  EXPECT_EQ(std::count(synth.labels.begin(), synth.labels.end(), kOutlierLabel), 5);
  for (int c = 0; c < 10; ++c) EXPECT_EQ(std::count(synth.labels.begin(), synth.labels.end(), c), 40);
  EXPECT_EQ(synth.pool.sequence(0).frame_count(), cfg.frames_per_sequence);
  EXPECT_EQ(synth.pool.dim(), 16u);
}

TEST(GeneratePool, Deterministic) {
  SynthConfig cfg;
  cfg.seed = 99;
  const auto a = generate_pool(cfg);
  const auto b = generate_pool(cfg);
  EXPECT_TRUE(a.pool == b.pool);
  EXPECT_EQ(a.labels, b.labels);
  cfg.seed = 100;
  EXPECT_FALSE(generate_pool(cfg).pool == a.pool);
}

TEST(GeneratePool, TwoClustersInPlaneAreNearlyOpposite) {
  SynthConfig cfg;
  cfg.clusters = 2;
  cfg.dim = 2;
  cfg.cluster_spread = 0.05;
  cfg.first_frame_noise = 0.05;
  cfg.outliers = 0;
  cfg.samples_per_cluster = 20;
  const auto synth = generate_pool(cfg);
  const auto reps = multi_frame_reps(synth.pool, cfg.interval, cfg.fused_frames);
  std::vector<double> mean0(2, 0.0), mean1(2, 0.0);
  for (std::size_t i = 0; i < synth.labels.size(); ++i) {
    auto& m = synth.labels[i] == 0 ? mean0 : mean1;
    m[0] += reps.reps[i][0];
    m[1] += reps.reps[i][1];
  }
  EXPECT_GT(cosine_distance(mean0, mean1), 1.8);
}

TEST(GeneratePool, OutliersAreIsolated) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    const auto synth = generate_pool(cfg);
    const auto m = distance_matrix(multi_frame_reps(synth.pool, cfg.interval, cfg.fused_frames).reps, Metric::Cosine);
    const auto stats = nn_stats(m);
    for (std::size_t i = 0; i < synth.labels.size(); ++i) {
      if (synth.labels[i] == kOutlierLabel) EXPECT_GT(stats.d[i], stats.ave_d);
    }
  }
}

TEST(GeneratePool, PackingFailureAndBadConfig) {
  SynthConfig cfg;
  cfg.clusters = 50;
  cfg.dim = 2;
  cfg.cluster_spread = 0.3;
  cfg.samples_per_cluster = 2;
  try {
    (void)generate_pool(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClusterPackingFailed);
  }
  SynthConfig bad;
  bad.clusters = 1;
  EXPECT_THROW((void)generate_pool(bad), Error);
  bad = SynthConfig{};
  bad.cluster_spread = 0.0;
  EXPECT_THROW((void)generate_pool(bad), Error);
  bad = SynthConfig{};
  bad.dim = 1;
  EXPECT_THROW((void)generate_pool(bad), Error);
}

TEST(Coverage, Counting) {
  const std::vector<int> labels{0, 0, 1, kOutlierLabel, 2, kOutlierLabel};
  const std::vector<std::size_t> sel{0, 1, 3, 5};
  EXPECT_EQ(clusters_covered(sel, labels), 1u);
  EXPECT_EQ(outliers_selected(sel, labels), 2u);
  const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(clusters_covered(all, labels), 3u);
}

TEST(SignTest, BinomialTail) {
  const std::vector<std::size_t> a{3, 3, 3, 3, 3, 2}, b{1, 1, 1, 1, 1, 2};
  const auto r = sign_test(a, b);
  EXPECT_EQ(r.wins, 5u);
  EXPECT_EQ(r.losses, 0u);
  EXPECT_EQ(r.ties, 1u);
  EXPECT_NEAR(r.p_value, 1.0 / 32.0, 1e-12);
  EXPECT_TRUE(r.significant());

  std::vector<std::size_t> c(10, 1), d(10, 0);
  d[0] = 2;
  d[1] = 2;
  const auto r2 = sign_test(c, d);
  EXPECT_EQ(r2.wins, 8u);
  EXPECT_NEAR(r2.p_value, 56.0 / 1024.0, 1e-12);
  EXPECT_FALSE(r2.significant());

  const auto none = sign_test(c, c);
  EXPECT_EQ(none.p_value, 1.0);
}

TEST(RunBench, RandomCoverageMatchesHypergeometricOracle) {
  SynthConfig cfg;
  cfg.outliers = 2;
  std::vector<std::uint64_t> seeds(200);
  std::iota(seeds.begin(), seeds.end(), 0);
  const std::vector<std::size_t> budgets{5, 10, 20};
  const std::vector<Strategy> strategies{Strategy::Random};
  const auto report = run_bench(cfg, budgets, strategies, seeds, 0);
  for (auto b : budgets) {
    const double expected = expected_random_coverage(cfg, b);
    // Per-run std is below 1.2 clusters; 200 seeds gives a standard error < 0.09.
    EXPECT_NEAR(report.summary(Strategy::Random, b).mean_clusters_covered, expected, 0.35) << "budget " << b;
  }
}

TEST(RunBench, FullBudgetRandomCoversEverything) {
  SynthConfig cfg;
  cfg.clusters = 3;
  cfg.samples_per_cluster = 5;
  cfg.dim = 8;
  cfg.outliers = 1;
  const std::vector<std::size_t> budgets{16};
  const std::vector<Strategy> strategies{Strategy::Random};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto report = run_bench(cfg, budgets, strategies, seeds);
  EXPECT_EQ(report.summary(Strategy::Random, 16).coverage_rate, 1.0);
  EXPECT_EQ(report.summary(Strategy::Random, 16).mean_outliers_selected, 1.0);
}

TEST(RunBench, KmalSelectsNoOutliers) {
  SynthConfig cfg;
  const std::vector<std::size_t> budgets{5, 10, 40};
  const std::vector<Strategy> strategies{Strategy::KMAL, Strategy::MAL};
  std::vector<std::uint64_t> seeds(20);
  std::iota(seeds.begin(), seeds.end(), 100);
  const auto report = run_bench(cfg, budgets, strategies, seeds, 0);
  std::size_t mal_outliers = 0;
  for (const auto& cell : report.cells) {
    if (cell.strategy == Strategy::KMAL) EXPECT_EQ(cell.outliers_selected, 0u);
    else mal_outliers += cell.outliers_selected;
  }
  // Plain FPS does reach for the isolated samples.
  EXPECT_GT(mal_outliers, 0u);
}

TEST(RunBench, ReportIsDeterministicAndThreadIndependent) {
  SynthConfig cfg;
  cfg.samples_per_cluster = 15;
  const std::vector<std::size_t> budgets{10};
  const std::vector<Strategy> strategies{Strategy::Random, Strategy::SAL, Strategy::MAL, Strategy::KMAL};
  std::vector<std::uint64_t> seeds(6);
  std::iota(seeds.begin(), seeds.end(), 0);
  const auto a = run_bench(cfg, budgets, strategies, seeds, 1);
  const auto b = run_bench(cfg, budgets, strategies, seeds, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(format_bench_report(a, cfg), format_bench_report(b, cfg));
  EXPECT_EQ(a.cells.size(), 24u);
  EXPECT_EQ(a.seeds_run, 6u);
  const auto text = format_bench_report(a, cfg);
  EXPECT_EQ(text.rfind("alsel-bench 1\nconfig clusters=10 ", 0), 0u);
  EXPECT_NE(text.find("\ncell strategy=random budget=10 seed=0 clusters_covered="), std::string::npos);
  EXPECT_NE(text.find("\nsummary strategy=kmal budget=10 seeds=6 mean_clusters_covered="), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 4), "end\n");
}

}  // namespace
}  // namespace alsel
