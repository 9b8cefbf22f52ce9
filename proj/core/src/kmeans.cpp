#include "cc/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cc/random.hpp"

namespace cc {

namespace {

Eigen::MatrixXd init_uniform_rows(const Dataset& data, int k, Rng& rng) {
  // Partial Fisher-Yates: k distinct rows.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(data.n()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  Eigen::MatrixXd centers(k, data.d());
  for (int r = 0; r < k; ++r) {
    const std::size_t pick = r + rng.uniform_index(idx.size() - static_cast<std::size_t>(r));
    std::swap(idx[static_cast<std::size_t>(r)], idx[pick]);
    centers.row(r) = data.rows.row(idx[static_cast<std::size_t>(r)]);
  }
  return centers;
}

Eigen::MatrixXd init_plus_plus(const Dataset& data, int k, Rng& rng) {
  const Eigen::Index n = data.n();
  Eigen::MatrixXd centers(k, data.d());
  centers.row(0) = data.rows.row(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::size_t>(n))));
  Eigen::VectorXd d2 = (data.rows.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int r = 1; r < k; ++r) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (pick = 0; pick < n - 1; ++pick) {
        if (u < d2(pick)) break;
        u -= d2(pick);
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::size_t>(n)));
    }
    centers.row(r) = data.rows.row(pick);
    d2 = d2.cwiseMin((data.rows.rowwise() - centers.row(r)).rowwise().squaredNorm());
  }
  return centers;
}

KMeansResult lloyd(const Dataset& data, Eigen::MatrixXd centers, int max_iters) {
  const Eigen::Index n = data.n();
  const int k = static_cast<int>(centers.rows());
  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  std::vector<double> point_cost(static_cast<std::size_t>(n), 0.0);
  KMeansResult res;

  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int r = 0; r < k; ++r) {
        const double dd = (data.rows.row(i) - centers.row(r)).squaredNorm();
        if (dd < best_d) {
          best_d = dd;
          best = r;
        }
      }
      const auto ui = static_cast<std::size_t>(i);
      if (assign[ui] != best) {
        assign[ui] = best;
        changed = true;
      }
      point_cost[ui] = best_d;
      objective += best_d;
    }
    res.objective_history.push_back(objective);
    res.iterations = iter + 1;
    res.objective = objective;
    if (!changed) {
      res.converged = true;
      break;
    }

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, data.d());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int r = assign[static_cast<std::size_t>(i)];
      sums.row(r) += data.rows.row(i);
      ++counts[static_cast<std::size_t>(r)];
    }
    for (int r = 0; r < k; ++r) {
      const auto c = counts[static_cast<std::size_t>(r)];
      if (c > 0) {
        centers.row(r) = sums.row(r) / static_cast<double>(c);
        continue;
      }
      // Empty cluster: move its center onto the worst-served point.
      const auto far = std::max_element(point_cost.begin(), point_cost.end()) - point_cost.begin();
      centers.row(r) = data.rows.row(far);
      point_cost[static_cast<std::size_t>(far)] = 0.0;
    }
  }
  res.centers = std::move(centers);
  res.clustering = canonicalize(assign);
  return res;
}

}  // namespace

KMeansResult kmeans(const Dataset& data, int k, std::uint64_t seed, const KMeansOptions& options) {
  data.validate();
  if (k < 1) throw std::invalid_argument("kmeans: k must be at least 1");
  if (k > data.n())
    throw std::invalid_argument("kmeans: k = " + std::to_string(k) + " exceeds n = " +
                                std::to_string(data.n()));
  if (options.max_iters < 1) throw std::invalid_argument("kmeans: max_iters must be at least 1");
  if (options.n_starts < 1) throw std::invalid_argument("kmeans: n_starts must be at least 1");

  Rng rng(seed);
  KMeansResult best;
  for (int s = 0; s < options.n_starts; ++s) {
    Eigen::MatrixXd centers = options.init == KMeansInit::plus_plus ? init_plus_plus(data, k, rng)
                                                                    : init_uniform_rows(data, k, rng);
    KMeansResult run = lloyd(data, std::move(centers), options.max_iters);
    if (s == 0 || run.objective < best.objective) best = std::move(run);
  }
  return best;
}

}  // namespace cc
