#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cc {

/// n x d matrix of finite reals; row order is the unit order every clustering
/// of this dataset refers to.
struct Dataset {
  Eigen::MatrixXd rows;
  std::vector<std::string> column_names;  // empty or one per column

  Eigen::Index n() const { return rows.rows(); }
  Eigen::Index d() const { return rows.cols(); }

  /// Throws std::invalid_argument unless n >= 1, d >= 1 and all entries are
  /// finite.
  void validate() const;
};

/// Columns in the requested order.
Dataset feature_subset(const Dataset& data, std::span<const int> columns);

Eigen::VectorXd column_means(const Dataset& data);
/// Sample covariance with divisor n - 1 (zero matrix when n == 1).
Eigen::MatrixXd covariance(const Dataset& data);

}  // namespace cc
