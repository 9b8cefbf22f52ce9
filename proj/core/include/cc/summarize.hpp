#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cc/clustering.hpp"
#include "cc/metric.hpp"
#include "cc/trace.hpp"

namespace cc {

// Summaries of a sample of clusterings. Everything works on a precomputed
// DistanceMatrix over the sample; positions are 0-based sample indices.
// Neighborhoods are strict (distance < epsilon) and include the center
// itself.

/// Number of sample points strictly within epsilon of each point.
std::vector<std::size_t> neighborhood_counts(const DistanceMatrix& d, double epsilon);

struct CentralClustering {
  std::size_t index = 0;
  double probability = 0.0;
};

/// Point whose epsilon-neighborhood holds the largest fraction of the sample;
/// ties go to the smallest index. Throws std::invalid_argument on an empty
/// sample or epsilon <= 0.
CentralClustering empirical_central_clustering(const DistanceMatrix& d, double epsilon);

struct ModeReport {
  /// Modes in order of emergence; the first is the global mode.
  std::vector<std::size_t> mode_indices;
  /// Smallest grid epsilon at which each mode is the central clustering.
  std::vector<double> epsilons;
  /// Neighborhood probability of each mode at that epsilon.
  std::vector<double> neighborhood_probs;

  /// Per grid point: the grid value, the central clustering chosen there, its
  /// probability, and every index attaining the maximum probability.
  std::vector<double> grid;
  std::vector<std::size_t> winners;
  std::vector<double> winner_probs;
  std::vector<std::vector<std::size_t>> argmax_sets;

  std::size_t global_mode() const { return mode_indices.front(); }
};

/// Scans an increasing epsilon grid. At each grid point the central
/// clustering is the maximizer of the neighborhood probability; ties are
/// resolved by the larger neighborhood at the preceding (smaller) grid points,
/// then by the smallest index. A point is a mode if it is the central
/// clustering at some grid epsilon whose maximal neighborhood holds more than
/// the point itself. Modes at mutual distance 0 are merged. When no grid
/// point qualifies, the single mode is the central clustering at the first
/// grid point.
ModeReport detect_modes(const DistanceMatrix& d, std::span<const double> epsilon_grid);

/// lo, lo + step, ... up to and including hi (within half a step).
std::vector<double> epsilon_grid(double lo, double hi, double step);
/// 0.01, 0.02, ..., 0.99.
std::vector<double> default_epsilon_grid();

struct RegionReport {
  std::vector<std::size_t> centers;
  /// Radius of each center; always steps * zeta for an integer step count.
  std::vector<double> radii;
  std::vector<std::int64_t> radius_steps;
  /// Sorted sample positions inside at least one ball.
  std::vector<std::size_t> members;
  double achieved_prob = 0.0;
  /// HPD regions only: number of sweeps, and the distinct union
  /// probabilities reached after them, in order.
  std::int64_t sweeps = 0;
  std::vector<double> sweep_probs;
};

/// Smallest radius m * zeta (m >= 1) whose strict ball around `center` holds
/// at least `target` of the sample.
RegionReport credible_region(const DistanceMatrix& d, std::size_t center, double target, double zeta);

enum class HpdGrowth {
  /// A point outside every ball grows the ball of its nearest center.
  nearest,
  /// A point outside every ball grows every ball.
  all,
};

/// Adaptive union-of-balls region. All radii start at 0; a sweep visits the
/// sample in order and, for each point outside the union, grows a radius by
/// zeta; the loop stops as soon as the union holds at least `target` of the
/// sample. Sweeps that cannot change any membership are skipped in bulk, so
/// the result equals the step-by-step loop exactly.
RegionReport hpd_region(const DistanceMatrix& d, std::span<const std::size_t> modes, double target,
                        double zeta, HpdGrowth growth = HpdGrowth::nearest);

/// Point minimizing the sum of distances to the sample (smallest index on
/// ties).
std::size_t median_clustering(const DistanceMatrix& d);

/// Orders the sample by distance to `reference` (the reference first, then
/// trace order among equal distances) and returns the entry at rank
/// ceil(q N), rank 1 for q = 0.
std::size_t quantile_clustering(const DistanceMatrix& d, std::size_t reference, double q);

std::map<int, double> cluster_count_distribution(std::span<const Clustering> sample);
std::map<int, double> cluster_count_distribution(const ClusteringTrace& trace,
                                                 std::span<const std::size_t> positions);

/// Mode detection restricted to trace entries with exactly k clusters.
/// Probabilities are relative to that sub-trace; returned indices refer to
/// the full trace. Throws std::invalid_argument naming the available counts
/// when no entry has k clusters.
ModeReport conditional_central_clustering(const ClusteringTrace& trace, const DistanceMatrix& d,
                                          int k, std::span<const double> epsilon_grid);

/// Trace positions with exactly k clusters.
std::vector<std::size_t> entries_with_k(const ClusteringTrace& trace, int k);

}  // namespace cc
