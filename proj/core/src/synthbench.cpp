#include "alsel/synthbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "alsel/distance.hpp"
#include "alsel/fusion.hpp"
#include "alsel/parallel.hpp"
#include "alsel/rng.hpp"
#include "alsel/selection.hpp"

namespace alsel {

namespace {

constexpr std::size_t kCandidatesPerDirection = 64;
constexpr std::size_t kPackingAttempts = 32;
constexpr std::size_t kRegenerations = 16;

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

void normalize(Vec& v) {
  const double n = std::sqrt(dot(v, v));
  for (auto& x : v) x /= n;
}

double angle(const Vec& a, const Vec& b) { return std::acos(std::clamp(dot(a, b), -1.0, 1.0)); }

Vec random_direction(SplitMix64& rng, std::size_t dim) {
  Vec v(dim);
  do {
    for (auto& x : v) x = rng.normal();
  } while (dot(v, v) < 1e-12);
  normalize(v);
  return v;
}

/// Unit vector at angle ~ sigma from u in a random tangent direction.
Vec perturb(SplitMix64& rng, const Vec& u, double sigma) {
  const std::size_t dim = u.size();
  Vec t(dim);
  for (auto& x : t) x = rng.normal();
  const double along = dot(t, u);
  for (std::size_t k = 0; k < dim; ++k) t[k] -= along * u[k];
  const double scale = sigma / std::sqrt(static_cast<double>(dim - 1));
  Vec w(dim);
  for (std::size_t k = 0; k < dim; ++k) w[k] = u[k] + scale * t[k];
  normalize(w);
  return w;
}

double min_angle_to(const Vec& v, const std::vector<Vec>& others) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : others) best = std::min(best, angle(v, o));
  return best;
}

/// Best-candidate placement: of kCandidatesPerDirection random directions,
/// keep the one farthest (in angle) from `placed`.
Vec best_candidate(SplitMix64& rng, std::size_t dim, const std::vector<Vec>& placed) {
  Vec best = random_direction(rng, dim);
  if (placed.empty()) return best;
  double best_score = min_angle_to(best, placed);
  for (std::size_t c = 1; c < kCandidatesPerDirection; ++c) {
    Vec v = random_direction(rng, dim);
    const double score = min_angle_to(v, placed);
    if (score > best_score) {
      best_score = score;
      best = std::move(v);
    }
  }
  return best;
}

std::vector<Vec> place_directions(SplitMix64& rng, const SynthConfig& cfg, std::vector<Vec>& outliers) {
  for (std::size_t attempt = 0; attempt < kPackingAttempts; ++attempt) {
    std::vector<Vec> clusters;
    bool ok = true;
    for (std::size_t c = 0; c < cfg.clusters && ok; ++c) {
      Vec v = best_candidate(rng, cfg.dim, clusters);
      ok = clusters.empty() || min_angle_to(v, clusters) >= 2.0 * cfg.cluster_spread;
      clusters.push_back(std::move(v));
    }
    outliers.clear();
    for (std::size_t o = 0; o < cfg.outliers && ok; ++o) {
      std::vector<Vec> placed = clusters;
      placed.insert(placed.end(), outliers.begin(), outliers.end());
      Vec v = best_candidate(rng, cfg.dim, placed);
      ok = min_angle_to(v, clusters) >= 4.0 * cfg.cluster_spread;
      outliers.push_back(std::move(v));
    }
    if (ok) return clusters;
  }
  throw Error(ErrorCode::ClusterPackingFailed, "could not pack " + std::to_string(cfg.clusters) +
                                                   " clusters and " + std::to_string(cfg.outliers) +
                                                   " outliers in dim " + std::to_string(cfg.dim));
}

std::string padded_id(const char* prefix, std::size_t a, std::size_t width) {
  std::string digits = std::to_string(a);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

SequenceEmbedding make_sequence(SplitMix64& rng, const Vec& direction, const SynthConfig& cfg) {
  const Vec centre = perturb(rng, direction, cfg.cluster_spread);
  std::vector<double> values;
  values.reserve(cfg.frames_per_sequence * cfg.dim);
  for (std::size_t f = 0; f < cfg.frames_per_sequence; ++f) {
    const Vec frame = perturb(rng, centre, f == 0 ? cfg.first_frame_noise : cfg.frame_noise);
    values.insert(values.end(), frame.begin(), frame.end());
  }
  return SequenceEmbedding(cfg.dim, std::move(values));
}

SynthPool generate_once(std::uint64_t seed, const SynthConfig& cfg) {
  SplitMix64 rng(seed);
  std::vector<Vec> outlier_dirs;
  const auto cluster_dirs = place_directions(rng, cfg, outlier_dirs);

  std::vector<std::string> ids;
  std::vector<SequenceEmbedding> sequences;
  std::vector<int> labels;
  for (std::size_t c = 0; c < cfg.clusters; ++c) {
    for (std::size_t s = 0; s < cfg.samples_per_cluster; ++s) {
      ids.push_back(padded_id("c", c, 2) + padded_id("_s", s, 4));
      sequences.push_back(make_sequence(rng, cluster_dirs[c], cfg));
      labels.push_back(static_cast<int>(c));
    }
  }
  for (std::size_t o = 0; o < cfg.outliers; ++o) {
    ids.push_back(padded_id("outlier_", o, 3));
    sequences.push_back(make_sequence(rng, outlier_dirs[o], cfg));
    labels.push_back(kOutlierLabel);
  }
  return SynthPool{EmbeddingSet::create(cfg.dim, std::move(ids), std::move(sequences)), std::move(labels), 1};
}

bool outliers_isolated(const SynthPool& synth, const SynthConfig& cfg) {
  if (cfg.outliers == 0) return true;
  const auto reps = multi_frame_reps(synth.pool, cfg.interval, cfg.fused_frames);
  const auto stats = nn_stats(distance_matrix(reps.reps, Metric::Cosine));
  for (std::size_t i = 0; i < synth.labels.size(); ++i) {
    if (synth.labels[i] == kOutlierLabel && !(stats.d[i] > stats.ave_d)) return false;
  }
  return true;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

SynthPool generate_pool(const SynthConfig& config) {
  if (config.clusters < 2 || config.dim < 2 || !(config.cluster_spread > 0.0) ||
      config.samples_per_cluster == 0 || config.frames_per_sequence == 0 || config.frame_noise < 0.0 ||
      config.first_frame_noise < 0.0 || config.interval == 0 || config.fused_frames == 0) {
    throw Error(ErrorCode::InvalidArgument, "synthetic config needs k >= 2, dim >= 2, spread > 0 and "
                                            "positive sample/frame counts");
  }
  for (std::size_t attempt = 0; attempt < kRegenerations; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? config.seed : derive_seed(config.seed, attempt);
    SynthPool synth = generate_once(seed, config);
    if (outliers_isolated(synth, config)) {
      synth.attempts = attempt + 1;
      return synth;
    }
  }
  throw Error(ErrorCode::ClusterPackingFailed, "planted outliers are not isolated (d_i > ave_d) after " +
                                                   std::to_string(kRegenerations) + " regenerations");
}

std::size_t clusters_covered(std::span<const std::size_t> selected, std::span<const int> labels) {
  std::set<int> hit;
  for (auto i : selected) {
    if (labels[i] != kOutlierLabel) hit.insert(labels[i]);
  }
  return hit.size();
}

std::size_t outliers_selected(std::span<const std::size_t> selected, std::span<const int> labels) {
  return static_cast<std::size_t>(
      std::count_if(selected.begin(), selected.end(), [&](std::size_t i) { return labels[i] == kOutlierLabel; }));
}

std::vector<std::size_t> BenchReport::coverage(Strategy strategy, std::size_t budget) const {
  std::vector<std::size_t> out;
  for (const auto& c : cells) {
    if (c.strategy == strategy && c.budget == budget) out.push_back(c.clusters_covered);
  }
  return out;
}

const BenchSummary& BenchReport::summary(Strategy strategy, std::size_t budget) const {
  for (const auto& s : summaries) {
    if (s.strategy == strategy && s.budget == budget) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "no summary for that strategy and budget");
}

BenchReport run_bench(const SynthConfig& config, std::span<const std::size_t> budgets,
                      std::span<const Strategy> strategies, std::span<const std::uint64_t> seeds,
                      std::size_t threads) {
  const std::size_t per_seed = strategies.size() * budgets.size();
  std::vector<BenchCell> by_seed(seeds.size() * per_seed);

  // One pool per seed; within a seed the cells share the pool.
  parallel_for(seeds.size(), threads, [&](std::size_t s) {
    SynthConfig cfg = config;
    cfg.seed = derive_seed(config.seed, seeds[s]);
    const SynthPool synth = generate_pool(cfg);
    for (std::size_t a = 0; a < strategies.size(); ++a) {
      for (std::size_t b = 0; b < budgets.size(); ++b) {
        SelectionConfig sel;
        sel.strategy = strategies[a];
        sel.budget = budgets[b];
        sel.interval = config.interval;
        sel.frames_per_sequence = config.fused_frames;
        sel.seed = seeds[s];
        sel.metric = Metric::Cosine;
        sel.threads = 1;
        const auto result = run_selection(synth.pool, sel);
        by_seed[s * per_seed + a * budgets.size() + b] =
            BenchCell{strategies[a], budgets[b], seeds[s], clusters_covered(result.selected, synth.labels),
                      outliers_selected(result.selected, synth.labels)};
      }
    }
  });

  BenchReport report;
  report.clusters = config.clusters;
  report.seeds_run = seeds.size();
  for (std::size_t a = 0; a < strategies.size(); ++a) {
    for (std::size_t b = 0; b < budgets.size(); ++b) {
      std::size_t covered = 0;
      std::size_t outliers = 0;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const auto& cell = by_seed[s * per_seed + a * budgets.size() + b];
        report.cells.push_back(cell);
        covered += cell.clusters_covered;
        outliers += cell.outliers_selected;
      }
      const double denom = seeds.empty() ? 1.0 : static_cast<double>(seeds.size());
      BenchSummary summary;
      summary.strategy = strategies[a];
      summary.budget = budgets[b];
      summary.mean_clusters_covered = static_cast<double>(covered) / denom;
      summary.coverage_rate = summary.mean_clusters_covered / static_cast<double>(config.clusters);
      summary.mean_outliers_selected = static_cast<double>(outliers) / denom;
      report.summaries.push_back(summary);
    }
  }
  return report;
}

SignTestResult sign_test(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "sign test needs paired samples");
  }
  SignTestResult out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) ++out.wins;
    else if (a[i] < b[i]) ++out.losses;
    else ++out.ties;
  }
  const std::size_t n = out.wins + out.losses;
  if (n == 0) return out;
  // Upper tail of Binomial(n, 1/2), terms built in log space.
  double tail = 0.0;
  for (std::size_t k = out.wins; k <= n; ++k) {
    const double log_term = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                            std::lgamma(static_cast<double>(n - k) + 1.0) - static_cast<double>(n) * std::log(2.0);
    tail += std::exp(log_term);
  }
  out.p_value = std::min(1.0, tail);
  return out;
}

std::string format_bench_report(const BenchReport& report, const SynthConfig& config) {
  std::ostringstream out;
  out << "alsel-bench 1\n";
  out << "config clusters=" << config.clusters << " samples_per_cluster=" << config.samples_per_cluster
      << " dim=" << config.dim << " frames_per_sequence=" << config.frames_per_sequence
      << " cluster_spread=" << fmt("%.17g", config.cluster_spread) << " frame_noise=" << fmt("%.17g", config.frame_noise)
      << " first_frame_noise=" << fmt("%.17g", config.first_frame_noise) << " outliers=" << config.outliers
      << " seed=" << config.seed << " interval=" << config.interval << " fused_frames=" << config.fused_frames
      << '\n';
  for (const auto& c : report.cells) {
    out << "cell strategy=" << to_string(c.strategy) << " budget=" << c.budget << " seed=" << c.seed
        << " clusters_covered=" << c.clusters_covered << " outliers_selected=" << c.outliers_selected << '\n';
  }
  for (const auto& s : report.summaries) {
    out << "summary strategy=" << to_string(s.strategy) << " budget=" << s.budget << " seeds=" << report.seeds_run
        << " mean_clusters_covered=" << fmt("%.6f", s.mean_clusters_covered)
        << " coverage_rate=" << fmt("%.6f", s.coverage_rate)
        << " mean_outliers_selected=" << fmt("%.6f", s.mean_outliers_selected) << '\n';
  }
  out << "end\n";
  return out.str();
}

}  // namespace alsel
