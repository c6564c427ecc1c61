#include "alsel/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alsel/distance.hpp"
#include "alsel/parallel.hpp"

namespace alsel {

RepresentativeSet first_frame_reps(const EmbeddingSet& pool) {
  RepresentativeSet out;
  out.mode = RepMode::FirstFrame;
  out.reps.reserve(pool.size());
  out.frames_used.assign(pool.size(), {0});
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto frame = pool.sequence(i).frame(0);
    out.reps.emplace_back(frame.begin(), frame.end());
  }
  return out;
}

std::vector<std::size_t> sampled_frame_indices(std::size_t frame_count, std::size_t interval, std::size_t count) {
  std::vector<std::size_t> indices;
  const std::size_t last = frame_count - 1;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t idx = std::min(k * interval, last);
    if (!indices.empty() && indices.back() == idx) break;  // clamped: every later index is `last` too
    indices.push_back(idx);
  }
  return indices;
}

RepresentativeSet multi_frame_reps(const EmbeddingSet& pool, std::size_t interval, std::size_t count,
                                   std::size_t threads) {
  if (interval == 0 || count == 0) {
    throw Error(ErrorCode::InvalidArgument, "interval and frame count must be at least 1");
  }
  const std::size_t dim = pool.dim();
  RepresentativeSet out;
  out.mode = RepMode::MultiFrame;
  out.interval = interval;
  out.reps.assign(pool.size(), std::vector<double>(dim, 0.0));
  out.frames_used.resize(pool.size());
  std::vector<char> degenerate(pool.size(), 0);

  parallel_for(pool.size(), threads, [&](std::size_t i) {
    const auto& seq = pool.sequence(i);
    auto indices = sampled_frame_indices(seq.frame_count(), interval, count);
    auto& rep = out.reps[i];
    for (std::size_t f : indices) {
      const auto frame = seq.frame(f);
      for (std::size_t k = 0; k < dim; ++k) rep[k] += frame[k];
    }
    const double inv = 1.0 / static_cast<double>(indices.size());
    double sq = 0.0;
    for (auto& x : rep) {
      x *= inv;
      sq += x * x;
    }
    const double nrm = std::sqrt(sq);
    if (nrm < kZeroNorm) {
      degenerate[i] = 1;
    } else {
      for (auto& x : rep) x /= nrm;
    }
    out.frames_used[i] = std::move(indices);
  });

  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (degenerate[i]) {
      throw Error(ErrorCode::ZeroNormVector,
                  "fused representative of sequence '" + pool.id(i) + "' (index " + std::to_string(i) +
                      ") has zero norm");
    }
  }
  return out;
}

}  // namespace alsel
