#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// selection/distance/loss code paths: everything is recomputed from scratch
// with plain loops so they can serve as independent oracles.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "alsel/rng.hpp"
#include "alsel/types.hpp"

namespace alsel::testing {

using Matrix = std::vector<std::vector<double>>;

inline Matrix brute_distances(const std::vector<std::vector<double>>& pts, Metric metric) {
  const std::size_t n = pts.size();
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double acc = 0.0, nu = 0.0, nv = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) {
        if (metric == Metric::Euclidean) {
          acc += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
        } else {
          acc += pts[i][k] * pts[j][k];
          nu += pts[i][k] * pts[i][k];
          nv += pts[j][k] * pts[j][k];
        }
      }
      m[i][j] = metric == Metric::Euclidean ? std::sqrt(acc) : 1.0 - acc / std::sqrt(nu * nv);
    }
  }
  return m;
}

struct BruteNN {
  std::vector<std::size_t> nn;
  std::vector<double> d;
  double ave_d = 0.0;
};

/// Exhaustive double loop; smallest index wins ties.
inline BruteNN brute_nn(const Matrix& m) {
  const std::size_t n = m.size();
  BruteNN out{std::vector<std::size_t>(n), std::vector<double>(n), 0.0};
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!best || m[i][j] < m[i][*best]) best = j;
    }
    out.nn[i] = *best;
    out.d[i] = m[i][*best];
    sum += out.d[i];
  }
  out.ave_d = sum / static_cast<double>(n);
  return out;
}

inline double min_to_set(const Matrix& m, std::size_t i, const std::vector<std::size_t>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (auto s : set) best = std::min(best, m[i][s]);
  return best;
}

inline bool contains(const std::vector<std::size_t>& v, std::size_t x) {
  for (auto y : v) {
    if (y == x) return true;
  }
  return false;
}

/// Greedy max-min, recomputing every min from scratch at every step.
inline std::vector<std::size_t> brute_fps(const Matrix& m, std::size_t budget, std::size_t start) {
  std::vector<std::size_t> sel{start};
  while (sel.size() < budget) {
    std::optional<std::size_t> best;
    double best_val = -1.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (contains(sel, i)) continue;
      const double v = min_to_set(m, i, sel);
      if (!best || v > best_val) {
        best = i;
        best_val = v;
      }
    }
    sel.push_back(*best);
  }
  return sel;
}

/// Exhaustive check that a sequence is a valid greedy max-min order: at every
/// step the pick attains the maximum over all unselected candidates (any of
/// several tied maxima is acceptable here).
inline bool is_max_min_order(const Matrix& m, const std::vector<std::size_t>& order) {
  for (std::size_t k = 1; k < order.size(); ++k) {
    std::vector<std::size_t> prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    double best = -1.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!contains(prefix, i)) best = std::max(best, min_to_set(m, i, prefix));
    }
    if (min_to_set(m, order[k], prefix) != best) return false;
  }
  return true;
}

struct KmalStep {
  std::size_t candidate;
  std::optional<double> min_distance;
  bool accepted;
  std::optional<RejectionReason> reason;
};

struct KmalTrace {
  std::vector<std::size_t> subset;
  std::vector<KmalStep> steps;
  bool exhausted = false;
};

/// Active-learning selection as a single straight-line procedure:
///   1. nearest neighbour nn_i, distance d_i, average ave_d over the pool;
///   2. randomly pick a seed among samples with d_i <= ave_d;
///   3. while |subA| < B: take the farthest remaining sample i_s from subA;
///      add it iff nn_{i_s} is not in subA and d_{i_s} <= ave_d, otherwise
///      drop it for good.
/// Uses the same seeded draw convention as the library (ascending eligible
/// list, SplitMix64(seed).below(count)) so traces are comparable.
inline KmalTrace straight_line_kmal(const Matrix& m, std::size_t budget, std::uint64_t seed) {
  const std::size_t n = m.size();
  const BruteNN stats = brute_nn(m);

  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    if (stats.d[i] <= stats.ave_d) seeds.push_back(i);
  }
  SplitMix64 rng(seed);
  KmalTrace trace;
  trace.subset.push_back(seeds[rng.below(seeds.size())]);
  trace.steps.push_back({trace.subset[0], std::nullopt, true, std::nullopt});

  std::vector<std::size_t> dropped;
  while (trace.subset.size() < budget) {
    std::optional<std::size_t> pick;
    double pick_val = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (contains(trace.subset, i) || contains(dropped, i)) continue;
      const double v = min_to_set(m, i, trace.subset);
      if (!pick || v > pick_val) {
        pick = i;
        pick_val = v;
      }
    }
    if (!pick) {
      trace.exhausted = true;
      break;
    }
    const std::size_t s = *pick;
    const bool nn_in = contains(trace.subset, stats.nn[s]);
    const bool dense = stats.d[s] <= stats.ave_d;
    if (!nn_in && dense) {
      trace.steps.push_back({s, pick_val, true, std::nullopt});
      trace.subset.push_back(s);
    } else {
      trace.steps.push_back({s, pick_val, false,
                             nn_in ? RejectionReason::NeighborAlreadySelected : RejectionReason::ExceedsAverageNN});
      dropped.push_back(s);
    }
  }
  return trace;
}

/// Central differences of f at x, one coordinate at a time.
inline std::array<double, 4> central_difference(const std::function<double(const std::array<double, 4>&)>& f,
                                                std::array<double, 4> x, double h) {
  std::array<double, 4> g{};
  for (std::size_t k = 0; k < 4; ++k) {
    const double keep = x[k];
    x[k] = keep + h;
    const double up = f(x);
    x[k] = keep - h;
    const double down = f(x);
    x[k] = keep;
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

/// Random points for selection tests. `grid` snaps coordinates to small
/// integers so distance ties are common.
inline std::vector<std::vector<double>> random_points(SplitMix64& rng, std::size_t n, std::size_t dim, bool grid) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts) {
    bool nonzero = false;
    while (!nonzero) {
      for (auto& x : p) {
        x = grid ? static_cast<double>(rng.below(5)) - 2.0 : rng.normal();
        nonzero = nonzero || x != 0.0;
      }
    }
  }
  return pts;
}

/// Random overlapping box pair whose corresponding edges all differ by more
/// than `margin`, so the loss is smooth in a neighbourhood of the pair.
inline std::pair<BBox, BBox> smooth_overlapping_pair(SplitMix64& rng, double margin) {
  for (;;) {
    auto coord = [&] { return rng.uniform() * 100.0; };
    double a1 = coord(), a2 = coord(), b1 = coord(), b2 = coord();
    double c1 = coord(), c2 = coord(), d1 = coord(), d2 = coord();
    if (a1 > a2) std::swap(a1, a2);
    if (b1 > b2) std::swap(b1, b2);
    if (c1 > c2) std::swap(c1, c2);
    if (d1 > d2) std::swap(d1, d2);
    const double xs[] = {a1, a2, c1, c2};
    const double ys[] = {b1, b2, d1, d2};
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      for (int j = i + 1; j < 4 && ok; ++j) {
        ok = std::abs(xs[i] - xs[j]) > margin && std::abs(ys[i] - ys[j]) > margin;
      }
    }
    // Overlap must be a strict interval on both axes.
    ok = ok && std::min(a2, c2) - std::max(a1, c1) > margin && std::min(b2, d2) - std::max(b1, d1) > margin;
    if (ok) return {BBox(a1, b1, a2, b2), BBox(c1, d1, c2, d2)};
  }
}

inline BBox random_box(SplitMix64& rng) {
  double a = rng.uniform() * 50.0, b = rng.uniform() * 50.0;
  double c = a + 0.5 + rng.uniform() * 50.0, d = b + 0.5 + rng.uniform() * 50.0;
  return BBox(a, b, c, d);
}

}  // namespace alsel::testing
