#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "alsel/types.hpp"

namespace alsel {

/// Label given to planted outliers.
inline constexpr int kOutlierLabel = -1;

struct SynthConfig {
  std::size_t clusters = 10;
  std::size_t samples_per_cluster = 40;
  std::size_t dim = 16;
  std::size_t frames_per_sequence = 41;
  double cluster_spread = 0.15;     ///< angular std of sequence centres around a cluster direction (rad)
  double frame_noise = 0.05;        ///< angular std of frames 1.. around the sequence centre (rad)
  double first_frame_noise = 1.3;  ///< frame 0 is noisier, so fusing later frames denoises it
  std::size_t outliers = 5;
  std::uint64_t seed = 0;
  /// Fusion parameters used when checking that outliers are isolated.
  std::size_t interval = 10;
  std::size_t fused_frames = 5;
};

struct SynthPool {
  EmbeddingSet pool;
  std::vector<int> labels;  ///< cluster id per sequence, kOutlierLabel for outliers
  std::size_t attempts = 1; ///< generations needed to satisfy the outlier condition
};

/// Clustered unit-vector sequences with planted outliers, deterministic in
/// config.seed.
///
/// Cluster directions are packed by best-candidate sampling and must be at
/// least 2 * cluster_spread apart; outlier directions at least
/// 4 * cluster_spread from every cluster. After generation every outlier must
/// satisfy d_i > ave_d on the fused cosine representatives; otherwise the pool
/// is regenerated from a derived sub-seed (bounded). Throws InvalidArgument
/// for a bad config and ClusterPackingFailed when directions cannot be placed
/// or the outlier condition keeps failing.
SynthPool generate_pool(const SynthConfig& config);

struct BenchCell {
  Strategy strategy = Strategy::Random;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t clusters_covered = 0;
  std::size_t outliers_selected = 0;

  friend bool operator==(const BenchCell&, const BenchCell&) = default;
};

struct BenchSummary {
  Strategy strategy = Strategy::Random;
  std::size_t budget = 0;
  double mean_clusters_covered = 0.0;
  double coverage_rate = 0.0;  ///< mean_clusters_covered / k
  double mean_outliers_selected = 0.0;

  friend bool operator==(const BenchSummary&, const BenchSummary&) = default;
};

struct BenchReport {
  std::size_t clusters = 0;
  std::size_t seeds_run = 0;
  std::vector<BenchCell> cells;  ///< ordered by strategy, then budget, then seed (input order)
  std::vector<BenchSummary> summaries;

  /// clusters_covered for one (strategy, budget) in seed order.
  std::vector<std::size_t> coverage(Strategy strategy, std::size_t budget) const;
  const BenchSummary& summary(Strategy strategy, std::size_t budget) const;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Distinct cluster labels among `selected` (outliers excluded).
std::size_t clusters_covered(std::span<const std::size_t> selected, std::span<const int> labels);
std::size_t outliers_selected(std::span<const std::size_t> selected, std::span<const int> labels);

/// For every seed s a pool is generated from derive_seed(config.seed, s) and
/// every (strategy, budget) is run on it with selection seed s. Cells may run
/// on `threads` workers; the report does not depend on it.
BenchReport run_bench(const SynthConfig& config, std::span<const std::size_t> budgets,
                      std::span<const Strategy> strategies, std::span<const std::uint64_t> seeds,
                      std::size_t threads = 1);

struct SignTestResult {
  std::size_t wins = 0;    ///< pairs where a > b
  std::size_t losses = 0;  ///< pairs where a < b
  std::size_t ties = 0;
  double p_value = 1.0;    ///< one-sided P(Binomial(wins + losses, 1/2) >= wins)

  bool significant(double level = 0.05) const noexcept { return p_value < level; }
};

/// Paired one-sided sign test of "a tends to exceed b"; ties are discarded.
SignTestResult sign_test(std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Line-oriented report text. Field order:
///   alsel-bench 1
///   config clusters=.. samples_per_cluster=.. dim=.. frames_per_sequence=..
///          cluster_spread=.. frame_noise=.. first_frame_noise=.. outliers=..
///          seed=.. interval=.. fused_frames=..            (one line)
///   cell strategy=.. budget=.. seed=.. clusters_covered=.. outliers_selected=..
///   ...
///   summary strategy=.. budget=.. seeds=.. mean_clusters_covered=..
///           coverage_rate=.. mean_outliers_selected=..     (one line)
///   end
std::string format_bench_report(const BenchReport& report, const SynthConfig& config);

}  // namespace alsel
