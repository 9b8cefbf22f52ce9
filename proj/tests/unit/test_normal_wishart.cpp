#include <gtest/gtest.h>

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <random>

#include "cc/errors.hpp"
#include "cc/normal_wishart.hpp"
#include "support/nw_oracles.hpp"

using cc::NormalWishart;
using cc::SuffStats;

namespace {

NormalWishart prior_1d(double mu0, double kappa, double dof, double scale) {
  NormalWishart nw;
  nw.location = Eigen::VectorXd::Constant(1, mu0);
  nw.kappa = kappa;
  nw.dof = dof;
  nw.scale = Eigen::MatrixXd::Constant(1, 1, scale);
  return nw;
}

SuffStats stats_of(const std::vector<Eigen::VectorXd>& ys) {
  SuffStats s(ys.front().size());
  for (const auto& y : ys) s.add(y);
  return s;
}

std::vector<Eigen::VectorXd> scalars(std::initializer_list<double> v) {
  std::vector<Eigen::VectorXd> out;
  for (double x : v) out.push_back(Eigen::VectorXd::Constant(1, x));
  return out;
}

// Student-t log density, location m, squared scale s2, nu degrees of freedom.
double student_t(double y, double m, double s2, double nu) {
  const double z = (y - m) * (y - m) / s2;
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * std::numbers::pi * s2) -
         0.5 * (nu + 1.0) * std::log1p(z / nu);
}

}  // namespace

TEST(NormalWishart, OneDimensionalMarginalMatchesQuadrature) {
  struct Case {
    double mu0, kappa, dof, scale;
    std::vector<double> ys;
  };
  const std::vector<Case> cases = {
      {0.0, 1.0, 4.0, 2.0, {0.7}},
      {2.9, 1.0, 4.0, 2.13, {1.1, 0.8, 1.3}},
      {-1.0, 0.5, 3.0, 0.4, {-1.2, -0.9, -1.1, -0.8, -1.05}},
      {1.0, 2.0, 6.0, 5.0, {3.0, -2.0}},
  };
  for (const auto& c : cases) {
    const auto nw = prior_1d(c.mu0, c.kappa, c.dof, c.scale);
    std::vector<Eigen::VectorXd> ys;
    for (double y : c.ys) ys.push_back(Eigen::VectorXd::Constant(1, y));
    const double closed = nw.log_marginal(stats_of(ys));
    const double numeric = cc::testing::quadrature_log_marginal(c.mu0, c.kappa, c.dof, c.scale, c.ys, closed);
    EXPECT_NEAR(std::exp(numeric - closed), 1.0, 1e-6) << "closed " << closed << " numeric " << numeric;
  }
}

TEST(NormalWishart, SingleObservationMarginalIsStudentT) {
  for (double y : {-3.0, 0.0, 0.4, 2.5, 10.0}) {
    const auto nw = prior_1d(0.3, 1.5, 4.0, 2.2);
    const double expected = student_t(y, 0.3, 2.2 * (1.5 + 1.0) / (1.5 * 4.0), 4.0);
    const double marginal = nw.log_marginal(stats_of(scalars({y})));
    EXPECT_NEAR(marginal, expected, 1e-8 * std::abs(expected));
    EXPECT_NEAR(nw.log_predictive(Eigen::VectorXd::Constant(1, y)), expected, 1e-8 * std::abs(expected));
  }
}

TEST(NormalWishart, MarginalChainRule) {
  // p(y1, y2) = p(y1) p(y2 | y1)
  NormalWishart nw;
  nw.location = Eigen::Vector2d(0.5, -0.2);
  nw.kappa = 0.7;
  nw.dof = 4.0;
  nw.scale = (Eigen::Matrix2d() << 2.0, 0.3, 0.3, 1.0).finished();
  const Eigen::VectorXd y1 = Eigen::Vector2d(1.0, 0.4), y2 = Eigen::Vector2d(-0.3, 0.9);
  const double joint = nw.log_marginal(stats_of({y1, y2}));
  const double chained = nw.log_predictive(y1) + nw.posterior(stats_of({y1})).log_predictive(y2);
  EXPECT_NEAR(joint, chained, 1e-10);
}

TEST(NormalWishart, ZeroObservationsReturnPrior) {
  const auto nw = prior_1d(1.0, 2.0, 5.0, 3.0);
  const auto post = nw.posterior(SuffStats(1));
  EXPECT_EQ(post.location, nw.location);
  EXPECT_EQ(post.kappa, nw.kappa);
  EXPECT_EQ(post.dof, nw.dof);
  EXPECT_EQ(post.scale, nw.scale);
  EXPECT_EQ(nw.log_marginal(SuffStats(1)), 0.0);
}

TEST(NormalWishart, OneObservationEqualWeightMean) {
  const auto nw = prior_1d(1.0, 1.0, 4.0, 2.0);
  const auto post = nw.posterior(stats_of(scalars({4.0})));
  EXPECT_DOUBLE_EQ(post.location(0), 2.5);
}

TEST(NormalWishart, SequentialUpdatesMatchBatch) {
  NormalWishart nw;
  nw.location = Eigen::Vector2d(0.0, 1.0);
  nw.kappa = 1.0;
  nw.dof = 4.0;
  nw.scale = (Eigen::Matrix2d() << 1.5, -0.2, -0.2, 0.8).finished();
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXd> ys;
  for (int i = 0; i < 20; ++i) ys.push_back(Eigen::Vector2d(g(rng), 2.0 + g(rng)));
  NormalWishart seq = nw;
  for (const auto& y : ys) seq = seq.posterior(stats_of({y}));
  const auto batch = nw.posterior(stats_of(ys));
  EXPECT_NEAR(seq.kappa, batch.kappa, 1e-12);
  EXPECT_NEAR(seq.dof, batch.dof, 1e-12);
  EXPECT_LT((seq.location - batch.location).norm(), 1e-12);
  EXPECT_LT((seq.scale - batch.scale).norm(), 1e-10);
}

TEST(NormalWishart, TwoDimensionalPredictiveMatchesMonteCarlo) {
  NormalWishart nw;
  nw.location = Eigen::Vector2d(0.0, 0.0);
  nw.kappa = 1.0;
  nw.dof = 4.0;
  nw.scale = (Eigen::Matrix2d() << 1.0, 0.2, 0.2, 1.5).finished();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXd> ys;
  for (int i = 0; i < 50; ++i) {
    const double u = g(rng), v = g(rng);
    ys.push_back(Eigen::Vector2d(1.0 + 0.8 * u, -0.5 + 0.3 * u + 0.5 * v));
  }
  const auto post = nw.posterior(stats_of(ys));

  const std::vector<Eigen::Vector2d> points = {{1.0, -0.5}, {0.0, 0.0}, {1.8, 0.1}, {0.4, -1.2}, {1.5, -0.9}};
  const int draws = 100000;
  const auto mc = cc::testing::monte_carlo_predictive(post, points, draws, 17);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double estimate = mc[p];
    const double closed = std::exp(post.log_predictive(points[p]));
    EXPECT_NEAR(estimate / closed, 1.0, 0.02) << "point " << p;
  }
}

TEST(NormalWishart, SampleMomentsMatchParameters) {
  NormalWishart nw;
  nw.location = Eigen::Vector2d(1.0, -1.0);
  nw.kappa = 2.0;
  nw.dof = 6.0;
  nw.scale = (Eigen::Matrix2d() << 3.0, 0.5, 0.5, 2.0).finished();
  cc::Rng rng(5);
  const int draws = 40000;
  Eigen::Matrix2d mean_precision = Eigen::Matrix2d::Zero();
  Eigen::Vector2d mean_mu = Eigen::Vector2d::Zero();
  for (int t = 0; t < draws; ++t) {
    const auto g = nw.sample(rng);
    mean_precision += g.precision();
    mean_mu += g.mean();
  }
  mean_precision /= draws;
  mean_mu /= draws;
  const Eigen::Matrix2d expected = nw.dof * nw.scale.inverse();
  EXPECT_LT((mean_precision - expected).cwiseAbs().maxCoeff(), 0.03 * expected.cwiseAbs().maxCoeff());
  EXPECT_LT((mean_mu - nw.location).cwiseAbs().maxCoeff(), 0.02);
}

TEST(NormalWishart, OneDimensionalPrecisionDrawsArePositive) {
  const auto nw = prior_1d(0.0, 1.0, 4.0, 4.0);
  cc::Rng rng(8);
  double sum = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double lambda = nw.sample(rng).precision()(0, 0);
    ASSERT_GT(lambda, 0.0);
    sum += lambda;
  }
  // Gamma(2, rate 2) has mean 1 and sd 0.707
  EXPECT_NEAR(sum / 10000, 1.0, 4 * 0.707 / 100);
}

TEST(NormalWishart, LogDensityIntegratesAgainstOneDimensionalForm) {
  const auto nw = prior_1d(0.5, 2.0, 3.0, 1.4);
  const double mu = 0.1, lambda = 1.7;
  const cc::Gaussian g(Eigen::VectorXd::Constant(1, mu), Eigen::MatrixXd::Constant(1, 1, lambda));
  const double a = 1.5, b = 0.7;
  const double expected = a * std::log(b) - std::lgamma(a) + (a - 1.0) * std::log(lambda) - b * lambda +
                          0.5 * std::log(2.0 * lambda / (2.0 * std::numbers::pi)) -
                          0.5 * 2.0 * lambda * (mu - 0.5) * (mu - 0.5);
  EXPECT_NEAR(nw.log_density(g), expected, 1e-12);
}

TEST(NormalWishart, ValidateRejectsBadParameters) {
  auto nw = prior_1d(0.0, 1.0, 4.0, 1.0);
  EXPECT_NO_THROW(nw.validate());
  nw.kappa = 0.0;
  EXPECT_THROW(nw.validate(), std::invalid_argument);
  nw = prior_1d(0.0, 1.0, 4.0, -1.0);
  EXPECT_THROW(nw.validate(), std::invalid_argument);
  nw = prior_1d(0.0, 1.0, 0.0, 1.0);
  EXPECT_THROW(nw.validate(), std::invalid_argument);
}

TEST(Gaussian, LikelihoodFromStatsMatchesPointwiseSum) {
  const cc::Gaussian g(Eigen::Vector2d(0.3, -0.4), (Eigen::Matrix2d() << 2.0, 0.6, 0.6, 1.0).finished());
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n;
  std::vector<Eigen::VectorXd> ys;
  double direct = 0.0;
  for (int i = 0; i < 30; ++i) {
    ys.push_back(Eigen::Vector2d(n(rng), n(rng)));
    direct += g.log_density(ys.back());
  }
  EXPECT_NEAR(cc::log_likelihood(g, stats_of(ys)), direct, 1e-10);
  EXPECT_EQ(cc::log_likelihood(g, SuffStats(2)), 0.0);

  // plain formula for one point
  const Eigen::Vector2d y(1.0, 2.0);
  const Eigen::Vector2d r = y - g.mean();
  const double expected = -std::log(2.0 * std::numbers::pi) + 0.5 * std::log(g.precision().determinant()) -
                          0.5 * r.dot(g.precision() * r);
  EXPECT_NEAR(g.log_density(y), expected, 1e-12);
}

TEST(Gaussian, NonPositiveDefinitePrecisionThrows) {
  EXPECT_THROW(cc::Gaussian(Eigen::Vector2d::Zero(), (Eigen::Matrix2d() << 1.0, 2.0, 2.0, 1.0).finished()),
               cc::NumericError);
}

TEST(SuffStats, MergeMatchesSequentialAdds) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> n;
  SuffStats all(3), left(3), right(3);
  for (int i = 0; i < 25; ++i) {
    const Eigen::Vector3d y(n(rng), 5.0 + n(rng), -2.0 * n(rng));
    all.add(y);
    (i < 11 ? left : right).add(y);
  }
  left.merge(right);
  EXPECT_EQ(left.count, all.count);
  EXPECT_LT((left.mean - all.mean).norm(), 1e-12);
  EXPECT_LT((left.scatter - all.scatter).norm(), 1e-10);
  SuffStats empty(3);
  empty.merge(all);
  EXPECT_EQ(empty.count, all.count);
}

TEST(Multigamma, ReducesToLogGamma) {
  EXPECT_NEAR(cc::log_multigamma(2.5, 1), std::lgamma(2.5), 1e-14);
  EXPECT_NEAR(cc::log_multigamma(3.0, 2), 0.5 * std::log(std::numbers::pi) + std::lgamma(3.0) + std::lgamma(2.5),
              1e-13);
}
