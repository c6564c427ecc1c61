#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "alsel/distance.hpp"
#include "alsel/types.hpp"

namespace alsel {

/// Greedy farthest-point state over a fixed distance matrix.
///
/// min_dist()[i] is the distance from i to its nearest selected sample
/// (0 for selected samples, +inf before the first add).
class FpsState {
 public:
  explicit FpsState(const DistanceMatrix& m);

  void add(std::size_t index);

  /// Unselected index with the largest min_dist among those where
  /// eligible[i] is true, smallest index on ties. nullopt if none remain.
  std::optional<std::size_t> farthest(std::span<const char> eligible) const;

  bool is_selected(std::size_t i) const noexcept { return in_set_[i] != 0; }
  std::span<const double> min_dist() const noexcept { return min_dist_; }
  std::span<const std::size_t> selected() const noexcept { return selected_; }

 private:
  const DistanceMatrix* m_;
  std::vector<std::size_t> selected_;
  std::vector<double> min_dist_;
  std::vector<char> in_set_;
};

/// Uniform draw of `budget` distinct indices from [0, n) (partial
/// Fisher-Yates over SplitMix64). Throws BudgetExceedsPool when budget > n and
/// InvalidArgument when budget is 0.
SelectionResult select_random(std::size_t n, std::size_t budget, std::uint64_t seed);

/// Farthest-point sampling from `start`.
SelectionResult select_fps(const DistanceMatrix& m, std::size_t budget, std::size_t start);

/// FPS with nearest-neighbour validation:
///  1. seed drawn uniformly from {i : d_i <= ave_d} (ascending index order,
///     SplitMix64(seed).below(count));
///  2. the FPS candidate among unselected, not-yet-rejected samples is
///     accepted iff its nearest neighbour is not selected and d_i <= ave_d;
///     a rejected candidate is never reconsidered;
///  3. stops at `budget` picks or, with exhausted = true, when no candidate
///     remains.
/// ave_d comes from `stats` of the full pool and never changes.
SelectionResult select_kmal(const DistanceMatrix& m, const NNStats& stats, std::size_t budget,
                            std::uint64_t seed);

/// Dispatches a strategy over a pool. SAL/MAL draw the FPS start from
/// SplitMix64(seed).below(n).
SelectionResult run_selection(const EmbeddingSet& pool, const SelectionConfig& config);

}  // namespace alsel
