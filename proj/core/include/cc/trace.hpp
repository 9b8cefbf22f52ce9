#pragma once

#include <cstdint>
#include <vector>

#include "cc/clustering.hpp"

namespace cc {

struct TraceEntry {
  long iteration = 0;
  Clustering clustering;
  double alpha = 0.0;

  int num_clusters() const { return clustering.num_clusters(); }
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TraceMeta {
  std::size_t n_units = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  long burn_in = 0;
  long thinning = 1;
  friend bool operator==(const TraceMeta&, const TraceMeta&) = default;
};

/// Kept (post burn-in, thinned) clusterings of one chain in iteration order.
struct ClusteringTrace {
  TraceMeta meta;
  std::vector<TraceEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  std::vector<Clustering> clusterings() const;

  friend bool operator==(const ClusteringTrace&, const ClusteringTrace&) = default;
};

}  // namespace cc
