#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "cc/random.hpp"

namespace cc {

/// Multivariate normal in precision form, with the Cholesky factor of the
/// precision cached (precision = chol * chol^T).
class Gaussian {
 public:
  Gaussian() = default;
  /// Throws NumericError if precision is not symmetric positive-definite.
  Gaussian(Eigen::VectorXd mean, Eigen::MatrixXd precision);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& precision() const { return precision_; }
  const Eigen::MatrixXd& precision_chol() const { return chol_; }
  double log_det_precision() const { return log_det_; }
  Eigen::Index dim() const { return mean_.size(); }

  double log_density(const Eigen::Ref<const Eigen::VectorXd>& y) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd precision_;
  Eigen::MatrixXd chol_;
  double log_det_ = 0.0;
};

/// Count, mean and centered scatter matrix of a set of observations,
/// accumulated with Welford updates.
struct SuffStats {
  Eigen::Index count = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd scatter;

  explicit SuffStats(Eigen::Index dim = 0)
      : mean(Eigen::VectorXd::Zero(dim)), scatter(Eigen::MatrixXd::Zero(dim, dim)) {}

  void add(const Eigen::Ref<const Eigen::VectorXd>& y);
  void merge(const SuffStats& other);
};

/// Sum of Gaussian log densities over the observations summarized by `stats`.
double log_likelihood(const Gaussian& component, const SuffStats& stats);

/// Normal-Wishart distribution over (mean, precision):
///
///   precision        ~ density |L|^{(dof-d-1)/2} exp(-tr(scale L)/2)
///                      (Wishart with dof degrees of freedom and scale
///                      matrix scale^{-1}, so E[precision] = dof scale^{-1})
///   mean | precision ~ N(location, (kappa precision)^{-1})
///
/// For d = 1 the precision is Gamma(dof/2, rate scale/2).
struct NormalWishart {
  Eigen::VectorXd location;
  double kappa = 1.0;
  double dof = 1.0;
  Eigen::MatrixXd scale;

  Eigen::Index dim() const { return location.size(); }

  /// Throws std::invalid_argument on inconsistent shapes, dof <= d - 1,
  /// kappa <= 0, or a scale matrix that is not SPD.
  void validate() const;

  /// Conjugate update; zero observations return *this unchanged.
  NormalWishart posterior(const SuffStats& stats) const;

  /// log of the integral of the likelihood of `stats` against this
  /// distribution. Zero for an empty set.
  double log_marginal(const SuffStats& stats) const;

  /// Student-t predictive density of one new observation.
  double log_predictive(const Eigen::Ref<const Eigen::VectorXd>& y) const;

  /// Draw via the Bartlett decomposition, then the mean given the precision.
  Gaussian sample(Rng& rng) const;

  double log_density(const Gaussian& theta) const;
};

/// log of the multivariate gamma function Gamma_d(a).
double log_multigamma(double a, int d);

}  // namespace cc
