#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alsel/error.hpp"

namespace alsel {

// ---------------------------------------------------------------------------
// Embedding pools
// ---------------------------------------------------------------------------

/// Unvalidated, nested form of a pool, convenient for hand-built fixtures and
/// loaders. Turn it into an EmbeddingSet with EmbeddingSet::from_raw.
struct RawSequence {
  std::string id;
  std::vector<std::vector<double>> frames;
};

struct RawPool {
  std::size_t dim = 0;
  std::vector<RawSequence> sequences;
};

/// Checks every pool invariant without throwing. Returns std::nullopt when the
/// pool is well formed, otherwise the first violation found (sequences are
/// scanned in order, frames in order, components in order).
std::optional<Error> validate_pool(const RawPool& pool);

/// Frames of one sequence, stored frame-major in a single buffer.
class SequenceEmbedding {
 public:
  /// `values` holds frame_count * dim components. Throws DimensionMismatch if
  /// the length is not a multiple of dim, EmptyPool if there are no frames and
  /// NonFiniteValue on NaN/inf.
  SequenceEmbedding(std::size_t dim, std::vector<double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t frame_count() const noexcept { return values_.size() / dim_; }
  std::span<const double> frame(std::size_t index) const;
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const SequenceEmbedding&, const SequenceEmbedding&) = default;

 private:
  std::size_t dim_;
  std::vector<double> values_;
};

/// The unlabeled pool: one embedding sequence per id. Always valid once built.
class EmbeddingSet {
 public:
  static EmbeddingSet from_raw(const RawPool& raw);

  /// Throws EmptyPool, DuplicateId or DimensionMismatch (a sequence whose dim
  /// differs from `dim`).
  static EmbeddingSet create(std::size_t dim, std::vector<std::string> ids,
                             std::vector<SequenceEmbedding> sequences);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return sequences_.size(); }
  const SequenceEmbedding& sequence(std::size_t i) const { return sequences_.at(i); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  std::span<const std::string> ids() const noexcept { return ids_; }

  friend bool operator==(const EmbeddingSet&, const EmbeddingSet&) = default;

 private:
  EmbeddingSet(std::size_t dim, std::vector<std::string> ids,
               std::vector<SequenceEmbedding> sequences);

  std::size_t dim_;
  std::vector<std::string> ids_;
  std::vector<SequenceEmbedding> sequences_;
};

// ---------------------------------------------------------------------------
// Selection
// ---------------------------------------------------------------------------

enum class Strategy { Random, SAL, MAL, KMAL };
enum class Metric { Cosine, Euclidean };

/// Lower-case CLI/file tokens: random|sal|mal|kmal and cosine|euclidean.
std::string_view to_string(Strategy strategy);
std::string_view to_string(Metric metric);
std::optional<Strategy> parse_strategy(std::string_view token);
std::optional<Metric> parse_metric(std::string_view token);

struct SelectionConfig {
  Strategy strategy = Strategy::KMAL;
  std::size_t budget = 1;
  std::size_t interval = 10;
  std::size_t frames_per_sequence = 5;
  std::uint64_t seed = 0;
  Metric metric = Metric::Cosine;
  /// Worker threads for distance computation; 0 picks hardware concurrency.
  /// Never changes results.
  std::size_t threads = 0;
};

enum class RejectionReason { NeighborAlreadySelected, ExceedsAverageNN };

/// NEIGHBOR_SELECTED / EXCEEDS_AVE_NN.
std::string_view to_string(RejectionReason reason);

struct AuditEntry {
  std::size_t step = 0;
  std::size_t candidate_index = 0;
  /// Absent for Random draws and for the first (seed) pick.
  std::optional<double> min_distance_to_selected;
  bool accepted = true;
  std::optional<RejectionReason> rejection_reason;

  friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

struct SelectionResult {
  std::vector<std::size_t> selected;
  std::vector<AuditEntry> audit;
  bool exhausted = false;

  friend bool operator==(const SelectionResult&, const SelectionResult&) = default;
};

// ---------------------------------------------------------------------------
// Boxes and loss parameters
// ---------------------------------------------------------------------------

/// Axis-aligned box in pixel coordinates. Zero width or height is allowed.
class BBox {
 public:
  /// Throws InvalidBox when a coordinate is not finite or x2 < x1 / y2 < y1.
  BBox(double x1, double y1, double x2, double y2);

  double x1() const noexcept { return x1_; }
  double y1() const noexcept { return y1_; }
  double x2() const noexcept { return x2_; }
  double y2() const noexcept { return y2_; }
  double width() const noexcept { return x2_ - x1_; }
  double height() const noexcept { return y2_ - y1_; }
  double area() const noexcept { return width() * height(); }

  BBox translated(double dx, double dy) const { return {x1_ + dx, y1_ + dy, x2_ + dx, y2_ + dy}; }

  friend bool operator==(const BBox&, const BBox&) = default;

 private:
  double x1_, y1_, x2_, y2_;
};

struct LossParams {
  double alpha = 0.4;
  double beta = 0.6;
  double eta = 100.0;
};

}  // namespace alsel
