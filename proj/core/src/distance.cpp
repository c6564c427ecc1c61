#include "alsel/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alsel/parallel.hpp"

namespace alsel {

namespace {

void require_same_length(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vectors of length " + std::to_string(u.size()) + " and " +
                                                  std::to_string(v.size()));
  }
}

double dot(std::span<const double> u, std::span<const double> v) noexcept {
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] * v[k];
  return acc;
}

double norm(std::span<const double> u) noexcept { return std::sqrt(dot(u, u)); }

double cosine_from_parts(double uv, double nu, double nv) noexcept {
  return std::clamp(1.0 - uv / (nu * nv), 0.0, 2.0);
}

}  // namespace

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  require_same_length(u, v);
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu < kZeroNorm || nv < kZeroNorm) {
    throw Error(ErrorCode::ZeroNormVector, "cosine distance of a zero-norm vector");
  }
  return cosine_from_parts(dot(u, v), nu, nv);
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
  require_same_length(u, v);
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double diff = u[k] - v[k];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double distance(Metric metric, std::span<const double> u, std::span<const double> v) {
  return metric == Metric::Cosine ? cosine_distance(u, v) : euclidean_distance(u, v);
}

DistanceMatrix DistanceMatrix::from_values(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n) {
    throw Error(ErrorCode::InvalidArgument, "distance matrix needs n*n values");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 0.0) {
      throw Error(ErrorCode::InvalidArgument, "nonzero diagonal at " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = values[i * n + j];
      if (!std::isfinite(a) || a < 0.0 || a != values[j * n + i]) {
        throw Error(ErrorCode::InvalidArgument, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                    ") is negative, non-finite or asymmetric");
      }
    }
  }
  return DistanceMatrix(n, std::move(values));
}

DistanceMatrix distance_matrix(std::span<const std::vector<double>> reps, Metric metric, std::size_t threads) {
  const std::size_t n = reps.size();
  if (n == 0) {
    throw Error(ErrorCode::EmptyPool, "no representatives");
  }
  const std::size_t dim = reps[0].size();
  for (std::size_t i = 0; i < n; ++i) {
    if (reps[i].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "representative " + std::to_string(i) + " has length " +
                                                    std::to_string(reps[i].size()) + ", expected " +
                                                    std::to_string(dim));
    }
  }

  std::vector<double> norms;
  if (metric == Metric::Cosine) {
    norms.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      norms[i] = norm(reps[i]);
      if (norms[i] < kZeroNorm) {
        throw Error(ErrorCode::ZeroNormVector, "representative " + std::to_string(i) + " has zero norm");
      }
    }
  }

  std::vector<double> values(n * n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      values[i * n + j] = metric == Metric::Cosine
                              ? cosine_from_parts(dot(reps[i], reps[j]), norms[i], norms[j])
                              : euclidean_distance(reps[i], reps[j]);
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) values[j * n + i] = values[i * n + j];
  }
  return DistanceMatrix(n, std::move(values));
}

NNStats nn_stats(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) {
    throw Error(ErrorCode::PoolTooSmall, "nearest-neighbour statistics need at least 2 samples, got " +
                                             std::to_string(n));
  }
  NNStats stats;
  stats.nn.resize(n);
  stats.d.resize(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = m.row(i);
    std::size_t best = i == 0 ? 1 : 0;
    for (std::size_t j = best + 1; j < n; ++j) {
      if (j != i && row[j] < row[best]) best = j;
    }
    stats.nn[i] = best;
    stats.d[i] = row[best];
    sum += row[best];
  }
  stats.ave_d = sum / static_cast<double>(n);
  return stats;
}

}  // namespace alsel
