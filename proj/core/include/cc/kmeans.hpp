#pragma once

#include <cstdint>
#include <vector>

#include "cc/clustering.hpp"
#include "cc/dataset.hpp"

namespace cc {

enum class KMeansInit { uniform_rows, plus_plus };

struct KMeansOptions {
  int max_iters = 100;
  /// Independent starts drawn from the same seeded stream; the start with the
  /// smallest within-cluster sum of squares is returned.
  int n_starts = 1;
  KMeansInit init = KMeansInit::uniform_rows;
};

struct KMeansResult {
  Clustering clustering;
  Eigen::MatrixXd centers;  // k x d, row r is the center of raw cluster r
  double objective = 0.0;   // within-cluster sum of squares
  int iterations = 0;
  bool converged = false;
  /// Objective after each assignment step of the returned start.
  std::vector<double> objective_history;
};

/// Lloyd iteration. Converges when assignments stop changing; a cluster that
/// empties is re-seeded with the point farthest from its current center.
/// Throws std::invalid_argument if k < 1, k > n or max_iters < 1.
KMeansResult kmeans(const Dataset& data, int k, std::uint64_t seed, const KMeansOptions& options = {});

}  // namespace cc
