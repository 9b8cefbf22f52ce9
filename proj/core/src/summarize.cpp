#include "cc/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace cc {

namespace {

void require_nonempty(const DistanceMatrix& d, const char* what) {
  if (d.size() == 0) throw std::invalid_argument(std::string(what) + ": empty sample");
}

void require_target(double target, const char* what) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument(std::string(what) + ": target probability must lie in (0, 1)");
}

void require_zeta(double zeta, const char* what) {
  if (!(zeta > 0.0) || !std::isfinite(zeta))
    throw std::invalid_argument(std::string(what) + ": zeta must be positive");
}

bool reaches(std::size_t count, std::size_t n, double target) {
  return static_cast<double>(count) / static_cast<double>(n) >= target;
}

/// Smallest m >= 1 with m * zeta > r, evaluated exactly as the radius is.
std::int64_t first_step_above(double r, double zeta) {
  auto m = static_cast<std::int64_t>(std::floor(r / zeta)) + 1;
  if (m < 1) m = 1;
  while (m > 1 && static_cast<double>(m - 1) * zeta > r) --m;
  while (static_cast<double>(m) * zeta <= r) ++m;
  return m;
}

double radius_of(std::int64_t steps, double zeta) { return static_cast<double>(steps) * zeta; }

/// Each row's distances, sorted ascending.
std::vector<std::vector<double>> sorted_rows(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = d(i, j);
    std::sort(rows[i].begin(), rows[i].end());
  }
  return rows;
}

std::size_t count_below(const std::vector<double>& sorted, double eps) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), eps) - sorted.begin());
}

}  // namespace

std::vector<std::size_t> neighborhood_counts(const DistanceMatrix& d, double epsilon) {
  const std::size_t n = d.size();
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d(i, j) < epsilon) ++counts[i];
  return counts;
}

CentralClustering empirical_central_clustering(const DistanceMatrix& d, double epsilon) {
  require_nonempty(d, "empirical_central_clustering");
  if (!(epsilon > 0.0)) throw std::invalid_argument("empirical_central_clustering: epsilon must be positive");
  const auto counts = neighborhood_counts(d, epsilon);
  const auto best = std::max_element(counts.begin(), counts.end()) - counts.begin();
  return {static_cast<std::size_t>(best),
          static_cast<double>(counts[static_cast<std::size_t>(best)]) / static_cast<double>(d.size())};
}

ModeReport detect_modes(const DistanceMatrix& d, std::span<const double> grid) {
  require_nonempty(d, "detect_modes");
  if (grid.empty()) throw std::invalid_argument("detect_modes: empty epsilon grid");
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (!(grid[g] > 0.0)) throw std::invalid_argument("detect_modes: epsilon grid must be positive");
    if (g && !(grid[g] > grid[g - 1]))
      throw std::invalid_argument("detect_modes: epsilon grid must be increasing");
  }

  const std::size_t n = d.size();
  const auto rows = sorted_rows(d);
  ModeReport report;
  report.grid.assign(grid.begin(), grid.end());

  // rank[i]: position of i in the ordering by neighborhood size at the
  // current and all smaller epsilons (lexicographic), then by index.
  std::vector<std::size_t> order(n), rank(n), counts(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::iota(rank.begin(), rank.end(), std::size_t{0});

  std::vector<std::size_t> qualifying_winners;
  std::vector<std::size_t> qualifying_grid;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t i = 0; i < n; ++i) counts[i] = count_below(rows[i], grid[g]);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (counts[a] != counts[b]) return counts[a] > counts[b];
      return rank[a] < rank[b];
    });
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;

    const std::size_t winner = order.front();
    const std::size_t max_count = counts[winner];
    std::vector<std::size_t> argmax;
    for (std::size_t i = 0; i < n; ++i)
      if (counts[i] == max_count) argmax.push_back(i);
    report.winners.push_back(winner);
    report.winner_probs.push_back(static_cast<double>(max_count) / static_cast<double>(n));
    report.argmax_sets.push_back(std::move(argmax));

    if (max_count >= 2 || n == 1) {
      qualifying_winners.push_back(winner);
      qualifying_grid.push_back(g);
    }
  }

  if (qualifying_winners.empty()) {
    qualifying_winners.push_back(report.winners.front());
    qualifying_grid.push_back(0);
  }
  for (std::size_t q = 0; q < qualifying_winners.size(); ++q) {
    const std::size_t w = qualifying_winners[q];
    const bool known = std::any_of(report.mode_indices.begin(), report.mode_indices.end(),
                                   [&](std::size_t m) { return m == w || d(m, w) == 0.0; });
    if (known) continue;
    const std::size_t g = qualifying_grid[q];
    report.mode_indices.push_back(w);
    report.epsilons.push_back(grid[g]);
    report.neighborhood_probs.push_back(report.winner_probs[g]);
  }
  return report;
}

std::vector<double> epsilon_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo > 0.0) || !(hi >= lo) || !(hi < 1.0 + 1e-12))
    throw std::invalid_argument("epsilon grid needs 0 < lo <= hi <= 1 and step > 0");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
  for (std::size_t i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
  return grid;
}

std::vector<double> default_epsilon_grid() { return epsilon_grid(0.01, 0.99, 0.01); }

RegionReport credible_region(const DistanceMatrix& d, std::size_t center, double target, double zeta) {
  require_nonempty(d, "credible_region");
  require_target(target, "credible_region");
  require_zeta(zeta, "credible_region");
  const std::size_t n = d.size();
  if (center >= n) throw std::invalid_argument("credible_region: center out of range");

  std::vector<double> dist(n);
  for (std::size_t j = 0; j < n; ++j) dist[j] = d(center, j);
  std::vector<double> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  std::size_t needed = 1;
  while (!reaches(needed, n, target)) ++needed;

  const std::int64_t steps = first_step_above(sorted[needed - 1], zeta);
  const double radius = radius_of(steps, zeta);
  RegionReport r;
  r.centers = {center};
  r.radius_steps = {steps};
  r.radii = {radius};
  for (std::size_t j = 0; j < n; ++j)
    if (dist[j] < radius) r.members.push_back(j);
  r.achieved_prob = static_cast<double>(r.members.size()) / static_cast<double>(n);
  return r;
}

RegionReport hpd_region(const DistanceMatrix& d, std::span<const std::size_t> modes, double target,
                        double zeta, HpdGrowth growth) {
  require_nonempty(d, "hpd_region");
  require_target(target, "hpd_region");
  require_zeta(zeta, "hpd_region");
  if (modes.empty()) throw std::invalid_argument("hpd_region: no modes");
  const std::size_t n = d.size();
  const std::size_t k = modes.size();
  for (auto m : modes)
    if (m >= n) throw std::invalid_argument("hpd_region: mode index out of range");

  // Per ball: sample positions by increasing distance to the center, and how
  // many of them are currently inside.
  std::vector<std::vector<std::size_t>> by_distance(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto& v = by_distance[j];
    v.resize(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    std::stable_sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
      return d(modes[j], a) < d(modes[j], b);
    });
  }
  std::vector<std::size_t> nearest(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < k; ++j)
      if (d(modes[j], i) < d(modes[nearest[i]], i)) nearest[i] = j;

  std::vector<std::int64_t> steps(k, 0);
  std::vector<std::size_t> inside(k, 0);
  std::vector<std::size_t> cover(n, 0);
  std::size_t union_count = 0;
  RegionReport r;

  auto grow = [&](std::size_t j) {
    ++steps[j];
    const double radius = radius_of(steps[j], zeta);
    auto& v = by_distance[j];
    while (inside[j] < n && d(modes[j], v[inside[j]]) < radius) {
      if (cover[v[inside[j]]]++ == 0) ++union_count;
      ++inside[j];
    }
    return reaches(union_count, n, target);
  };

  bool done = false;
  while (!done) {
    // Bulk-skip whole sweeps that cannot admit a new point into any ball.
    std::vector<std::int64_t> per_sweep(k, 0);
    std::size_t outside = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cover[i]) continue;
      ++outside;
      if (growth == HpdGrowth::nearest) ++per_sweep[nearest[i]];
    }
    if (growth == HpdGrowth::all) std::fill(per_sweep.begin(), per_sweep.end(), static_cast<std::int64_t>(outside));
    std::int64_t skip = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = 0; j < k; ++j) {
      if (per_sweep[j] == 0 || inside[j] == n) continue;
      const std::int64_t next = first_step_above(d(modes[j], by_distance[j][inside[j]]), zeta);
      skip = std::min(skip, (next - 1 - steps[j]) / per_sweep[j]);
    }
    if (skip != std::numeric_limits<std::int64_t>::max() && skip > 0) {
      for (std::size_t j = 0; j < k; ++j) steps[j] += skip * per_sweep[j];
      r.sweeps += skip;
    }

    for (std::size_t i = 0; i < n && !done; ++i) {
      if (cover[i]) continue;
      if (growth == HpdGrowth::nearest) {
        done = grow(nearest[i]);
      } else {
        for (std::size_t j = 0; j < k && !done; ++j) done = grow(j);
      }
    }
    ++r.sweeps;
    const double prob = static_cast<double>(union_count) / static_cast<double>(n);
    if (r.sweep_probs.empty() || r.sweep_probs.back() != prob) r.sweep_probs.push_back(prob);
  }

  r.centers.assign(modes.begin(), modes.end());
  r.radius_steps = steps;
  for (auto s : steps) r.radii.push_back(radius_of(s, zeta));
  for (std::size_t i = 0; i < n; ++i)
    if (cover[i]) r.members.push_back(i);
  r.achieved_prob = static_cast<double>(union_count) / static_cast<double>(n);
  return r;
}

std::size_t median_clustering(const DistanceMatrix& d) {
  require_nonempty(d, "median_clustering");
  const std::size_t n = d.size();
  std::size_t best = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += d(i, j);
    if (s < best_sum) {
      best_sum = s;
      best = i;
    }
  }
  return best;
}

std::size_t quantile_clustering(const DistanceMatrix& d, std::size_t reference, double q) {
  require_nonempty(d, "quantile_clustering");
  const std::size_t n = d.size();
  if (reference >= n) throw std::invalid_argument("quantile_clustering: reference out of range");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile_clustering: q must lie in [0, 1]");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = d(reference, a), db = d(reference, b);
    if (da != db) return da < db;
    return a == reference && b != reference;
  });
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return order[rank - 1];
}

std::map<int, double> cluster_count_distribution(std::span<const Clustering> sample) {
  if (sample.empty()) throw std::invalid_argument("cluster_count_distribution: empty input");
  std::map<int, std::size_t> counts;
  for (const auto& c : sample) ++counts[c.num_clusters()];
  std::map<int, double> out;
  for (auto [k, c] : counts) out[k] = static_cast<double>(c) / static_cast<double>(sample.size());
  return out;
}

std::map<int, double> cluster_count_distribution(const ClusteringTrace& trace,
                                                 std::span<const std::size_t> positions) {
  std::vector<Clustering> subset;
  subset.reserve(positions.size());
  for (auto p : positions) subset.push_back(trace.entries.at(p).clustering);
  return cluster_count_distribution(subset);
}

std::vector<std::size_t> entries_with_k(const ClusteringTrace& trace, int k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trace.entries.size(); ++i)
    if (trace.entries[i].num_clusters() == k) out.push_back(i);
  return out;
}

ModeReport conditional_central_clustering(const ClusteringTrace& trace, const DistanceMatrix& d,
                                          int k, std::span<const double> grid) {
  if (d.size() != trace.size())
    throw std::invalid_argument("conditional_central_clustering: distance matrix does not match trace");
  const auto positions = entries_with_k(trace, k);
  if (positions.empty()) {
    std::set<int> available;
    for (const auto& e : trace.entries) available.insert(e.num_clusters());
    std::string list;
    for (int a : available) list += (list.empty() ? "" : ",") + std::to_string(a);
    throw std::invalid_argument("no trace entry has " + std::to_string(k) +
                                " clusters; available counts: " + list);
  }
  ModeReport sub = detect_modes(d.subset(positions), grid);
  auto remap = [&](std::size_t& i) { i = positions[i]; };
  for (auto& i : sub.mode_indices) remap(i);
  for (auto& i : sub.winners) remap(i);
  for (auto& set : sub.argmax_sets)
    for (auto& i : set) remap(i);
  return sub;
}

}  // namespace cc
