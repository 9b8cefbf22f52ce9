#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "cc/clustering.hpp"
#include "cc/metric.hpp"
#include "cc/summarize.hpp"

namespace cc::testing {

inline std::size_t count_within(const cc::DistanceMatrix& d, std::size_t i, double eps) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < d.size(); ++j) c += d(i, j) < eps;
  return c;
}

inline std::pair<std::size_t, double> naive_central(const cc::DistanceMatrix& d, double eps) {
  std::size_t best = 0, best_count = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto c = count_within(d, i, eps);
    if (c > best_count) {
      best = i;
      best_count = c;
    }
  }
  return {best, double(best_count) / double(d.size())};
}

// Winner per grid point: largest count vector (current eps, then each smaller
// eps going down), then smallest index.
inline std::vector<std::size_t> naive_winners(const cc::DistanceMatrix& d, const std::vector<double>& grid) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::size_t best = 0;
    std::vector<std::size_t> best_key;
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::vector<std::size_t> key;
      for (std::size_t h = g + 1; h-- > 0;) key.push_back(count_within(d, i, grid[h]));
      if (i == 0 || key > best_key) {
        best = i;
        best_key = key;
      }
    }
    out.push_back(best);
  }
  return out;
}

inline std::int64_t naive_credible_steps(const cc::DistanceMatrix& d, std::size_t center, double target, double zeta) {
  for (std::int64_t m = 1;; ++m) {
    const double r = static_cast<double>(m) * zeta;
    if (double(count_within(d, center, r)) / double(d.size()) >= target) return m;
  }
}

struct NaiveHpd {
  std::vector<std::int64_t> steps;
  std::vector<std::size_t> members;
  std::int64_t sweeps = 0;
  std::vector<double> sweep_probs;
};

inline NaiveHpd naive_hpd(const cc::DistanceMatrix& d, const std::vector<std::size_t>& modes, double target, double zeta,
                   cc::HpdGrowth growth) {
  const std::size_t n = d.size(), k = modes.size();
  NaiveHpd r;
  r.steps.assign(k, 0);
  auto covered = [&](std::size_t i) {
    for (std::size_t j = 0; j < k; ++j)
      if (d(modes[j], i) < static_cast<double>(r.steps[j]) * zeta) return true;
    return false;
  };
  auto union_size = [&] {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += covered(i);
    return c;
  };
  auto nearest = [&](std::size_t i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j)
      if (d(modes[j], i) < d(modes[best], i)) best = j;
    return best;
  };
  bool done = false;
  while (!done) {
    for (std::size_t i = 0; i < n && !done; ++i) {
      if (covered(i)) continue;
      if (growth == cc::HpdGrowth::nearest) {
        ++r.steps[nearest(i)];
        done = double(union_size()) / double(n) >= target;
      } else {
        for (std::size_t j = 0; j < k && !done; ++j) {
          ++r.steps[j];
          done = double(union_size()) / double(n) >= target;
        }
      }
    }
    ++r.sweeps;
    const double p = double(union_size()) / double(n);
    if (r.sweep_probs.empty() || r.sweep_probs.back() != p) r.sweep_probs.push_back(p);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (covered(i)) r.members.push_back(i);
  return r;
}

inline std::size_t naive_median(const cc::DistanceMatrix& d) {
  std::size_t best = 0;
  double best_sum = 1e300;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) s += d(i, j);
    if (s < best_sum) {
      best_sum = s;
      best = i;
    }
  }
  return best;
}

inline std::size_t naive_quantile(const cc::DistanceMatrix& d, std::size_t ref, double q) {
  std::vector<std::tuple<double, int, std::size_t>> keyed;
  for (std::size_t i = 0; i < d.size(); ++i) keyed.emplace_back(d(ref, i), i == ref ? 0 : 1, i);
  std::sort(keyed.begin(), keyed.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * double(d.size())));
  if (rank == 0) rank = 1;
  return std::get<2>(keyed[rank - 1]);
}

inline std::vector<std::vector<Clustering>> hand_traces() {
  const Clustering a({0, 0, 0, 1, 1, 1}), a1({0, 0, 0, 1, 1, 0}), a2({0, 0, 1, 1, 1, 1});
  const Clustering b({0, 1, 0, 1, 0, 1}), b1({0, 1, 0, 1, 0, 0}), c({0, 1, 2, 0, 1, 2});
  const Clustering one({0, 0, 0, 0, 0, 0}), all({0, 1, 2, 3, 4, 5});
  return {
      {a},
      {a, a, a, b},
      {a, a1, a2, a, b, b1, b},
      {a, b, c, one, all},
      {one, one, one, one, one, one, one, one, one, one, one, one},
      {a, a1, a, a2, a, a1, b, b1, b, c, c, all},
      {c, b, a, a1, a2, b1},
      {all, one, all, one, a},
      {b1, b1, a2, a2, a2, c, c, c, c},
      {a, a1, a2, b, b1, c, one, all, a, b, c},
  };
}

}  // namespace cc::testing
