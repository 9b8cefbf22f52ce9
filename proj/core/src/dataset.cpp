#include "cc/dataset.hpp"

#include <stdexcept>

namespace cc {

void Dataset::validate() const {
  if (n() < 1 || d() < 1) throw std::invalid_argument("dataset must have at least one row and column");
  if (!rows.allFinite()) {
    for (Eigen::Index i = 0; i < n(); ++i)
      for (Eigen::Index j = 0; j < d(); ++j)
        if (!std::isfinite(rows(i, j)))
          throw std::invalid_argument("dataset has a non-finite value at row " + std::to_string(i) +
                                      ", column " + std::to_string(j));
  }
  if (!column_names.empty() && static_cast<Eigen::Index>(column_names.size()) != d())
    throw std::invalid_argument("dataset column names do not match column count");
}

Dataset feature_subset(const Dataset& data, std::span<const int> columns) {
  if (columns.empty()) throw std::invalid_argument("feature_subset: no columns requested");
  Dataset out;
  out.rows.resize(data.n(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const int src = columns[c];
    if (src < 0 || src >= data.d())
      throw std::invalid_argument("feature_subset: column " + std::to_string(src) +
                                  " out of range [0, " + std::to_string(data.d()) + ")");
    out.rows.col(static_cast<Eigen::Index>(c)) = data.rows.col(src);
    if (!data.column_names.empty()) out.column_names.push_back(data.column_names[src]);
  }
  return out;
}

Eigen::VectorXd column_means(const Dataset& data) { return data.rows.colwise().mean().transpose(); }

Eigen::MatrixXd covariance(const Dataset& data) {
  const Eigen::Index n = data.n();
  if (n < 2) return Eigen::MatrixXd::Zero(data.d(), data.d());
  const Eigen::MatrixXd centered = data.rows.rowwise() - data.rows.colwise().mean();
  return (centered.transpose() * centered) / static_cast<double>(n - 1);
}

}  // namespace cc
