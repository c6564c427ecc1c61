#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "alsel/types.hpp"

namespace alsel {

/// Norms below this are treated as zero by the cosine metric.
inline constexpr double kZeroNorm = 1e-12;

/// 1 - <u,v> / (|u||v|), clamped to [0, 2]. Throws ZeroNormVector if either
/// norm is below kZeroNorm and DimensionMismatch on unequal lengths.
double cosine_distance(std::span<const double> u, std::span<const double> v);

double euclidean_distance(std::span<const double> u, std::span<const double> v);

double distance(Metric metric, std::span<const double> u, std::span<const double> v);

/// Dense symmetric n x n matrix, row-major, zero diagonal.
class DistanceMatrix {
 public:
  /// Wraps precomputed values. Throws InvalidArgument unless values has n*n
  /// finite, non-negative entries, an exactly zero diagonal and exact symmetry.
  static DistanceMatrix from_values(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(values_).subspan(i * n_, n_);
  }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  friend DistanceMatrix distance_matrix(std::span<const std::vector<double>>, Metric, std::size_t);
  DistanceMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {}

  std::size_t n_;
  std::vector<double> values_;
};

/// Pairwise distances between representatives. Each upper-triangle entry is
/// computed independently from its two inputs and mirrored, so the result is
/// bitwise identical for every `threads` value (0 = hardware concurrency).
/// Throws EmptyPool on no input, DimensionMismatch on ragged input and
/// ZeroNormVector (naming the index) under the cosine metric.
DistanceMatrix distance_matrix(std::span<const std::vector<double>> reps, Metric metric,
                               std::size_t threads = 1);

struct NNStats {
  std::vector<std::size_t> nn;  ///< nearest neighbour of each sample
  std::vector<double> d;        ///< distance to that neighbour
  double ave_d = 0.0;           ///< mean of d, summed in index order

  friend bool operator==(const NNStats&, const NNStats&) = default;
};

/// Row-wise nearest neighbours; ties go to the smallest index. Throws
/// PoolTooSmall when n < 2.
NNStats nn_stats(const DistanceMatrix& m);

}  // namespace alsel
