#include "alsel/selection.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "alsel/fusion.hpp"
#include "alsel/rng.hpp"

namespace alsel {

namespace {

void check_budget(std::size_t budget, std::size_t n) {
  if (budget == 0) {
    throw Error(ErrorCode::InvalidArgument, "budget must be at least 1");
  }
  if (budget > n) {
    throw Error(ErrorCode::BudgetExceedsPool,
                "budget " + std::to_string(budget) + " exceeds pool size " + std::to_string(n));
  }
}

AuditEntry accepted_entry(std::size_t step, std::size_t index, std::optional<double> dist) {
  return AuditEntry{step, index, dist, true, std::nullopt};
}

}  // namespace

FpsState::FpsState(const DistanceMatrix& m)
    : m_(&m),
      min_dist_(m.size(), std::numeric_limits<double>::infinity()),
      in_set_(m.size(), 0) {}

void FpsState::add(std::size_t index) {
  selected_.push_back(index);
  in_set_[index] = 1;
  const auto row = m_->row(index);
  for (std::size_t i = 0; i < min_dist_.size(); ++i) {
    if (row[i] < min_dist_[i]) min_dist_[i] = row[i];
  }
  min_dist_[index] = 0.0;
}

std::optional<std::size_t> FpsState::farthest(std::span<const char> eligible) const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < min_dist_.size(); ++i) {
    if (in_set_[i] || !eligible[i]) continue;
    if (!best || min_dist_[i] > min_dist_[*best]) best = i;
  }
  return best;
}

SelectionResult select_random(std::size_t n, std::size_t budget, std::uint64_t seed) {
  check_budget(budget, n);
  SplitMix64 rng(seed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  SelectionResult out;
  out.selected.reserve(budget);
  for (std::size_t k = 0; k < budget; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
    std::swap(perm[k], perm[j]);
    out.selected.push_back(perm[k]);
    out.audit.push_back(accepted_entry(k, perm[k], std::nullopt));
  }
  return out;
}

SelectionResult select_fps(const DistanceMatrix& m, std::size_t budget, std::size_t start) {
  const std::size_t n = m.size();
  check_budget(budget, n);
  if (start >= n) {
    throw Error(ErrorCode::InvalidArgument, "start index " + std::to_string(start) + " out of range");
  }
  FpsState state(m);
  const std::vector<char> all(n, 1);
  SelectionResult out;
  state.add(start);
  out.audit.push_back(accepted_entry(0, start, std::nullopt));
  for (std::size_t step = 1; step < budget; ++step) {
    const std::size_t next = *state.farthest(all);
    out.audit.push_back(accepted_entry(step, next, state.min_dist()[next]));
    state.add(next);
  }
  out.selected.assign(state.selected().begin(), state.selected().end());
  return out;
}

SelectionResult select_kmal(const DistanceMatrix& m, const NNStats& stats, std::size_t budget,
                            std::uint64_t seed) {
  const std::size_t n = m.size();
  if (n < 2) {
    throw Error(ErrorCode::PoolTooSmall, "KMAL needs at least 2 samples");
  }
  if (stats.nn.size() != n || stats.d.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "nearest-neighbour statistics do not match the matrix");
  }
  check_budget(budget, n);

  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    if (stats.d[i] <= stats.ave_d) seeds.push_back(i);
  }
  if (seeds.empty()) {
    throw Error(ErrorCode::NoEligibleSeed, "no sample has d_i <= ave_d");
  }
  SplitMix64 rng(seed);
  const std::size_t first = seeds[rng.below(seeds.size())];

  FpsState state(m);
  std::vector<char> eligible(n, 1);
  SelectionResult out;
  state.add(first);
  out.audit.push_back(accepted_entry(0, first, std::nullopt));

  std::size_t step = 1;
  while (state.selected().size() < budget) {
    const auto candidate = state.farthest(eligible);
    if (!candidate) {
      out.exhausted = true;
      break;
    }
    const std::size_t c = *candidate;
    AuditEntry entry{step++, c, state.min_dist()[c], true, std::nullopt};
    if (state.is_selected(stats.nn[c])) {
      entry.accepted = false;
      entry.rejection_reason = RejectionReason::NeighborAlreadySelected;
    } else if (stats.d[c] > stats.ave_d) {
      entry.accepted = false;
      entry.rejection_reason = RejectionReason::ExceedsAverageNN;
    }
    out.audit.push_back(entry);
    if (entry.accepted) {
      state.add(c);
    } else {
      eligible[c] = 0;
    }
  }
  out.selected.assign(state.selected().begin(), state.selected().end());
  return out;
}

SelectionResult run_selection(const EmbeddingSet& pool, const SelectionConfig& config) {
  const std::size_t n = pool.size();
  check_budget(config.budget, n);
  switch (config.strategy) {
    case Strategy::Random:
      return select_random(n, config.budget, config.seed);
    case Strategy::SAL:
    case Strategy::MAL: {
      const auto reps = config.strategy == Strategy::SAL
                            ? first_frame_reps(pool)
                            : multi_frame_reps(pool, config.interval, config.frames_per_sequence, config.threads);
      const auto m = distance_matrix(reps.reps, config.metric, config.threads);
      SplitMix64 rng(config.seed);
      return select_fps(m, config.budget, static_cast<std::size_t>(rng.below(n)));
    }
    case Strategy::KMAL: {
      const auto reps = multi_frame_reps(pool, config.interval, config.frames_per_sequence, config.threads);
      const auto m = distance_matrix(reps.reps, config.metric, config.threads);
      return select_kmal(m, nn_stats(m), config.budget, config.seed);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown strategy");
}

}  // namespace alsel
