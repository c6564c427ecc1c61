#include "alsel/types.hpp"

#include <cmath>
#include <unordered_set>
#include <utility>

namespace alsel {

namespace {

std::optional<Error> check_finite(std::span<const double> values, const std::string& where) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      return Error(ErrorCode::NonFiniteValue, where + " component " + std::to_string(k) + " is not finite");
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Error> validate_pool(const RawPool& pool) {
  if (pool.dim == 0) {
    return Error(ErrorCode::DimensionMismatch, "pool dim must be positive");
  }
  if (pool.sequences.empty()) {
    return Error(ErrorCode::EmptyPool, "pool has no sequences");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& seq : pool.sequences) {
    if (!seen.insert(seq.id).second) {
      return Error(ErrorCode::DuplicateId, "sequence id '" + seq.id + "' appears more than once");
    }
    if (seq.frames.empty()) {
      return Error(ErrorCode::EmptyPool, "sequence '" + seq.id + "' has no frames");
    }
    for (std::size_t f = 0; f < seq.frames.size(); ++f) {
      const auto where = "sequence '" + seq.id + "' frame " + std::to_string(f);
      if (seq.frames[f].size() != pool.dim) {
        return Error(ErrorCode::DimensionMismatch, where + " has length " +
                                                      std::to_string(seq.frames[f].size()) + ", expected " +
                                                      std::to_string(pool.dim));
      }
      if (auto err = check_finite(seq.frames[f], where)) {
        return err;
      }
    }
  }
  return std::nullopt;
}

SequenceEmbedding::SequenceEmbedding(std::size_t dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ == 0 || values_.size() % dim_ != 0) {
    throw Error(ErrorCode::DimensionMismatch, "sequence buffer of " + std::to_string(values_.size()) +
                                                  " values is not a whole number of frames of dim " +
                                                  std::to_string(dim_));
  }
  if (values_.empty()) {
    throw Error(ErrorCode::EmptyPool, "sequence has no frames");
  }
  if (auto err = check_finite(values_, "sequence buffer")) {
    throw *err;
  }
}

std::span<const double> SequenceEmbedding::frame(std::size_t index) const {
  if (index >= frame_count()) {
    throw Error(ErrorCode::InvalidArgument, "frame index " + std::to_string(index) + " out of range");
  }
  return std::span<const double>(values_).subspan(index * dim_, dim_);
}

EmbeddingSet::EmbeddingSet(std::size_t dim, std::vector<std::string> ids,
                           std::vector<SequenceEmbedding> sequences)
    : dim_(dim), ids_(std::move(ids)), sequences_(std::move(sequences)) {}

EmbeddingSet EmbeddingSet::from_raw(const RawPool& raw) {
  if (auto err = validate_pool(raw)) {
    throw *err;
  }
  std::vector<std::string> ids;
  std::vector<SequenceEmbedding> sequences;
  ids.reserve(raw.sequences.size());
  sequences.reserve(raw.sequences.size());
  for (const auto& seq : raw.sequences) {
    std::vector<double> flat;
    flat.reserve(seq.frames.size() * raw.dim);
    for (const auto& frame : seq.frames) {
      flat.insert(flat.end(), frame.begin(), frame.end());
    }
    ids.push_back(seq.id);
    sequences.emplace_back(raw.dim, std::move(flat));
  }
  return EmbeddingSet(raw.dim, std::move(ids), std::move(sequences));
}

EmbeddingSet EmbeddingSet::create(std::size_t dim, std::vector<std::string> ids,
                                  std::vector<SequenceEmbedding> sequences) {
  if (dim == 0) {
    throw Error(ErrorCode::DimensionMismatch, "pool dim must be positive");
  }
  if (sequences.empty()) {
    throw Error(ErrorCode::EmptyPool, "pool has no sequences");
  }
  if (ids.size() != sequences.size()) {
    throw Error(ErrorCode::InvalidArgument, "ids and sequences differ in length");
  }
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen.insert(ids[i]).second) {
      throw Error(ErrorCode::DuplicateId, "sequence id '" + ids[i] + "' appears more than once");
    }
    if (sequences[i].dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "sequence '" + ids[i] + "' has dim " +
                                                    std::to_string(sequences[i].dim()) + ", expected " +
                                                    std::to_string(dim));
    }
  }
  return EmbeddingSet(dim, std::move(ids), std::move(sequences));
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Random: return "random";
    case Strategy::SAL: return "sal";
    case Strategy::MAL: return "mal";
    case Strategy::KMAL: return "kmal";
  }
  return "unknown";
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Cosine: return "cosine";
    case Metric::Euclidean: return "euclidean";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view token) {
  for (auto s : {Strategy::Random, Strategy::SAL, Strategy::MAL, Strategy::KMAL}) {
    if (to_string(s) == token) return s;
  }
  return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view token) {
  for (auto m : {Metric::Cosine, Metric::Euclidean}) {
    if (to_string(m) == token) return m;
  }
  return std::nullopt;
}

std::string_view to_string(RejectionReason reason) {
  switch (reason) {
    case RejectionReason::NeighborAlreadySelected: return "NEIGHBOR_SELECTED";
    case RejectionReason::ExceedsAverageNN: return "EXCEEDS_AVE_NN";
  }
  return "UNKNOWN";
}

BBox::BBox(double x1, double y1, double x2, double y2) : x1_(x1), y1_(y1), x2_(x2), y2_(y2) {
  if (!std::isfinite(x1) || !std::isfinite(y1) || !std::isfinite(x2) || !std::isfinite(y2)) {
    throw Error(ErrorCode::InvalidBox, "box coordinates must be finite");
  }
  if (x2 < x1 || y2 < y1) {
    throw Error(ErrorCode::InvalidBox, "box requires x2 >= x1 and y2 >= y1");
  }
}

}  // namespace alsel
