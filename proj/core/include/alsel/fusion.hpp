#pragma once

#include <cstddef>
#include <vector>

#include "alsel/types.hpp"

namespace alsel {

enum class RepMode { FirstFrame, MultiFrame };

/// One representative vector per pool sequence, in pool order.
struct RepresentativeSet {
  std::vector<std::vector<double>> reps;
  RepMode mode = RepMode::FirstFrame;
  std::size_t interval = 0;  ///< 0 for FirstFrame
  std::vector<std::vector<std::size_t>> frames_used;
};

/// reps[i] is frame 0 of sequence i, unmodified.
RepresentativeSet first_frame_reps(const EmbeddingSet& pool);

/// Frame indices {0, a, 2a, ..., (m-1)a} clamped to the last frame, duplicates
/// dropped (the list stays ascending).
std::vector<std::size_t> sampled_frame_indices(std::size_t frame_count, std::size_t interval, std::size_t count);

/// Multi-frame cooperation: mean of the sampled frames of each sequence, then
/// L2-normalised. Throws InvalidArgument for interval or count of 0 and
/// ZeroNormVector if a mean vanishes.
RepresentativeSet multi_frame_reps(const EmbeddingSet& pool, std::size_t interval, std::size_t count,
                                   std::size_t threads = 1);

}  // namespace alsel
