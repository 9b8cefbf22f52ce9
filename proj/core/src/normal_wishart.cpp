#include "cc/normal_wishart.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cc/errors.hpp"

namespace cc {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

std::string describe(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os << "diag=[" << m.diagonal().transpose() << "]";
  return os.str();
}

Eigen::LLT<Eigen::MatrixXd> checked_llt(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success || !m.allFinite()) {
    throw NumericError(std::string(what) + " is not symmetric positive-definite (" + describe(m) +
                       ")");
  }
  return llt;
}

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

Gaussian::Gaussian(Eigen::VectorXd mean, Eigen::MatrixXd precision)
    : mean_(std::move(mean)), precision_(std::move(precision)) {
  const auto llt = checked_llt(precision_, "component precision");
  chol_ = llt.matrixL();
  log_det_ = log_det_from_llt(llt);
}

double Gaussian::log_density(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  const Eigen::VectorXd r = chol_.transpose() * (y - mean_);
  return -0.5 * static_cast<double>(dim()) * kLogTwoPi + 0.5 * log_det_ - 0.5 * r.squaredNorm();
}

void SuffStats::add(const Eigen::Ref<const Eigen::VectorXd>& y) {
  ++count;
  const Eigen::VectorXd delta = y - mean;
  mean += delta / static_cast<double>(count);
  scatter.noalias() += delta * (y - mean).transpose();
}

void SuffStats::merge(const SuffStats& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const Eigen::VectorXd delta = other.mean - mean;
  scatter += other.scatter + (na * nb / (na + nb)) * delta * delta.transpose();
  mean += delta * (nb / (na + nb));
  count += other.count;
}

double log_likelihood(const Gaussian& component, const SuffStats& stats) {
  if (stats.count == 0) return 0.0;
  const double n = static_cast<double>(stats.count);
  const Eigen::MatrixXd& L = component.precision_chol();
  // sum_i (y_i - mu)' P (y_i - mu) = tr(P scatter) + n (ybar - mu)' P (ybar - mu)
  const Eigen::VectorXd r = L.transpose() * (stats.mean - component.mean());
  const double quad = (component.precision().cwiseProduct(stats.scatter)).sum() + n * r.squaredNorm();
  return -0.5 * n * static_cast<double>(component.dim()) * kLogTwoPi +
         0.5 * n * component.log_det_precision() - 0.5 * quad;
}

double log_multigamma(double a, int d) {
  double s = 0.25 * d * (d - 1) * std::log(std::numbers::pi);
  for (int j = 1; j <= d; ++j) s += std::lgamma(a + 0.5 * (1 - j));
  return s;
}

void NormalWishart::validate() const {
  const auto d = dim();
  if (d < 1) throw std::invalid_argument("NormalWishart: dimension must be at least 1");
  if (scale.rows() != d || scale.cols() != d)
    throw std::invalid_argument("NormalWishart: scale matrix shape does not match location");
  if (!(kappa > 0.0)) throw std::invalid_argument("NormalWishart: kappa must be positive");
  if (!(dof > static_cast<double>(d) - 1.0))
    throw std::invalid_argument("NormalWishart: degrees of freedom must exceed d - 1");
  if (!scale.isApprox(scale.transpose(), 1e-12))
    throw std::invalid_argument("NormalWishart: scale matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(scale);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("NormalWishart: scale matrix is not positive-definite");
}

NormalWishart NormalWishart::posterior(const SuffStats& stats) const {
  if (stats.count == 0) return *this;
  const double n = static_cast<double>(stats.count);
  NormalWishart post;
  post.kappa = kappa + n;
  post.dof = dof + n;
  post.location = (kappa * location + n * stats.mean) / post.kappa;
  const Eigen::VectorXd diff = stats.mean - location;
  post.scale = scale + stats.scatter + (kappa * n / post.kappa) * diff * diff.transpose();
  // Keep exact symmetry; rank-one updates can leave ulp-level asymmetry.
  post.scale = 0.5 * (post.scale + post.scale.transpose()).eval();
  return post;
}

double NormalWishart::log_marginal(const SuffStats& stats) const {
  if (stats.count == 0) return 0.0;
  const int d = static_cast<int>(dim());
  const double n = static_cast<double>(stats.count);
  const NormalWishart post = posterior(stats);
  const double logdet_prior = log_det_from_llt(checked_llt(scale, "prior scale matrix"));
  const double logdet_post = log_det_from_llt(checked_llt(post.scale, "posterior scale matrix"));
  return -0.5 * n * d * std::log(std::numbers::pi) + log_multigamma(0.5 * post.dof, d) -
         log_multigamma(0.5 * dof, d) + 0.5 * dof * logdet_prior - 0.5 * post.dof * logdet_post +
         0.5 * d * (std::log(kappa) - std::log(post.kappa));
}

double NormalWishart::log_predictive(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  const double d = static_cast<double>(dim());
  const double nu = dof - d + 1.0;
  // Student-t with nu dof, location `location`, shape scale (kappa+1)/(kappa nu).
  const Eigen::MatrixXd shape = scale * ((kappa + 1.0) / (kappa * nu));
  const auto llt = checked_llt(shape, "predictive shape matrix");
  const Eigen::VectorXd z = llt.matrixL().solve(y - location);
  return std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu) -
         0.5 * d * std::log(nu * std::numbers::pi) - 0.5 * log_det_from_llt(llt) -
         0.5 * (nu + d) * std::log1p(z.squaredNorm() / nu);
}

Gaussian NormalWishart::sample(Rng& rng) const {
  const auto d = dim();
  const Eigen::MatrixXd inv_scale =
      checked_llt(scale, "Wishart scale matrix").solve(Eigen::MatrixXd::Identity(d, d));
  const Eigen::MatrixXd lv = checked_llt(inv_scale, "inverse Wishart scale").matrixL();

  // Bartlett: A lower-triangular, A_ii^2 ~ chi^2(dof - i), A_ij ~ N(0,1) below.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    a(i, i) = std::sqrt(rng.chi_squared(dof - static_cast<double>(i)));
    for (Eigen::Index j = 0; j < i; ++j) a(i, j) = rng.normal();
  }
  const Eigen::MatrixXd la = lv * a;
  Eigen::MatrixXd precision = la * la.transpose();
  precision = 0.5 * (precision + precision.transpose()).eval();

  const Eigen::MatrixXd u = checked_llt(precision, "sampled precision").matrixL();
  Eigen::VectorXd z(d);
  for (Eigen::Index i = 0; i < d; ++i) z(i) = rng.normal();
  // cov(U^{-T} z) = (U U^T)^{-1} = precision^{-1}
  const Eigen::VectorXd offset = u.transpose().triangularView<Eigen::Upper>().solve(z);
  Eigen::VectorXd mean = location + offset / std::sqrt(kappa);
  return Gaussian(std::move(mean), std::move(precision));
}

double NormalWishart::log_density(const Gaussian& theta) const {
  const double d = static_cast<double>(dim());
  const double logdet_scale = log_det_from_llt(checked_llt(scale, "Wishart scale matrix"));
  const double log_wishart = 0.5 * (dof - d - 1.0) * theta.log_det_precision() -
                             0.5 * (scale.cwiseProduct(theta.precision())).sum() -
                             0.5 * dof * d * std::numbers::ln2 + 0.5 * dof * logdet_scale -
                             log_multigamma(0.5 * dof, static_cast<int>(d));
  const Eigen::VectorXd r = theta.precision_chol().transpose() * (theta.mean() - location);
  const double log_normal = -0.5 * d * kLogTwoPi + 0.5 * d * std::log(kappa) +
                            0.5 * theta.log_det_precision() - 0.5 * kappa * r.squaredNorm();
  return log_wishart + log_normal;
}

}  // namespace cc
