#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cc/clustering.hpp"

namespace cc {

enum class MetricKind { exact, approx };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view name);

/// A clustering distance in [0, 1].
///
/// Both kinds are ratios of integers: `agreement` units out of `total` are
/// matched, so value = (total - agreement) / total. For the approximate
/// distance `directed` holds the two one-sided values (rows of a against b,
/// then columns) and `agreement` is the smaller of the two max-sums.
struct DistanceResult {
  double value = 0.0;
  MetricKind kind = MetricKind::exact;
  std::optional<std::pair<double, double>> directed;
  std::int64_t agreement = 0;
  std::int64_t total = 0;
};

/// Exact distance: one minus the largest mass of a one-to-one matching of
/// clusters of a with clusters of b, relative to the unit count. The
/// minimization over relabelings is solved as a rectangular assignment.
DistanceResult exact_distance(const ContingencyTable& table);
DistanceResult exact_distance(const Clustering& a, const Clustering& b);

/// Symmetrized row-max / column-max relaxation of the exact distance.
/// Never exceeds exact_distance() and is zero only for equal partitions.
DistanceResult approx_distance(const ContingencyTable& table);
DistanceResult approx_distance(const Clustering& a, const Clustering& b);

/// One-sided relaxation: 1 - (sum of row maxima) / n.
double directed_approx_distance(const ContingencyTable& table);

DistanceResult distance(const Clustering& a, const Clustering& b, MetricKind kind);

/// Largest distance between two k-cluster partitions of n units when every
/// cell of the k x k table holds floor(n / k^2) units: 1 - m k / n.
double distance_upper_bound(std::int64_t n, std::int64_t k);

/// Symmetric matrix of pairwise distances with zero diagonal. Only the strict
/// upper triangle is stored.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), packed_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return packed_[offset(i, j)];
  }
  void set(std::size_t i, std::size_t j, double value) {
    if (i == j) return;
    if (i > j) std::swap(i, j);
    packed_[offset(i, j)] = value;
  }

  /// Distances among the given positions, in the given order.
  DistanceMatrix subset(std::span<const std::size_t> positions) const;

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> packed_;
};

/// All pairwise distances. Pairs are evaluated on up to `threads` workers
/// (0 = default_thread_count()); each entry depends only on its own pair, so
/// the result does not depend on the thread count.
DistanceMatrix distance_matrix(std::span<const Clustering> samples, MetricKind kind,
                               unsigned threads = 0);

}  // namespace cc
