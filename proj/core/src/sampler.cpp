#include "cc/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cc/errors.hpp"

namespace cc {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

void append(std::ostringstream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

// log(m_l L_j(theta_l)) for each value, log(alpha int L_j dG0) last. Values
// with zero occupancy get -inf.
void urn_log_weights(const std::vector<int>& occupancy, const std::vector<Gaussian>& atoms,
                     const SuffStats& stats, double alpha, const NormalWishart& base,
                     std::vector<double>& logw) {
  const std::size_t k = atoms.size();
  logw.resize(k + 1);
  for (std::size_t l = 0; l < k; ++l)
    logw[l] = occupancy[l] == 0 ? -std::numeric_limits<double>::infinity()
                                : std::log(static_cast<double>(occupancy[l])) + log_likelihood(atoms[l], stats);
  logw[k] = std::log(alpha) + base.log_marginal(stats);
}

bool is_spd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace

ModelConfig ModelConfig::defaults_for(const Dataset& data) {
  data.validate();
  ModelConfig cfg;
  const auto d = data.d();
  cfg.mu0 = column_means(data);
  cfg.scale = covariance(data);
  cfg.dof = std::max(4.0, static_cast<double>(d));
  if (!is_spd(cfg.scale)) {
    const double tr = cfg.scale.trace();
    double ridge = 1e-8 * (tr > 0.0 ? tr / static_cast<double>(d) : 1.0);
    Eigen::MatrixXd ridged = cfg.scale;
    // A single ridge can still lose to rounding in a rank-deficient matrix.
    for (int attempt = 0; attempt < 20; ++attempt, ridge *= 10.0) {
      ridged = cfg.scale + ridge * Eigen::MatrixXd::Identity(d, d);
      if (is_spd(ridged)) break;
    }
    cfg.scale = ridged;
  }
  return cfg;
}

NormalWishart ModelConfig::base_measure() const {
  NormalWishart nw;
  nw.location = mu0;
  nw.kappa = 1.0 / psi;
  nw.dof = dof;
  nw.scale = scale;
  return nw;
}

void ModelConfig::validate() const {
  if (max_components < 1) throw std::invalid_argument("model: max_components must be at least 1");
  if (dim() < 1) throw std::invalid_argument("model: mu0 is empty");
  if (!(dof >= static_cast<double>(dim())))
    throw std::invalid_argument("model: Wishart dof must be at least the dimension");
  if (!(psi > 0.0)) throw std::invalid_argument("model: psi must be positive");
  if (!(alpha_shape > 0.0) || !(alpha_rate > 0.0))
    throw std::invalid_argument("model: alpha prior shape and rate must be positive");
  base_measure().validate();
}

std::string ModelConfig::describe() const {
  std::ostringstream os;
  os << "M=" << max_components << " s=";
  append(os, dof);
  os << " psi=";
  append(os, psi);
  os << " alpha=";
  append(os, alpha_shape);
  os << ',';
  append(os, alpha_rate);
  os << " mu0=";
  for (Eigen::Index i = 0; i < mu0.size(); ++i) {
    if (i) os << ',';
    append(os, mu0(i));
  }
  os << " S=";
  for (Eigen::Index i = 0; i < scale.rows(); ++i)
    for (Eigen::Index j = 0; j < scale.cols(); ++j) {
      if (i || j) os << ',';
      append(os, scale(i, j));
    }
  return os.str();
}

std::uint64_t ModelConfig::hash() const {
  // FNV-1a over the stable text form.
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : describe()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

Clustering SamplerState::clustering() const {
  std::vector<int> value(allocation.size());
  for (std::size_t i = 0; i < allocation.size(); ++i)
    value[i] = configuration[static_cast<std::size_t>(allocation[i])];
  return canonicalize(value);
}

int SamplerState::num_occupied() const { return clustering().num_clusters(); }

std::vector<int> SamplerState::occupancy() const {
  std::vector<int> m(atoms.size(), 0);
  for (int c : configuration) ++m[static_cast<std::size_t>(c)];
  return m;
}

void SamplerState::check_invariants(int max_components) const {
  if (static_cast<int>(configuration.size()) != max_components)
    throw std::logic_error("state: configuration length differs from M");
  const int k = num_distinct();
  if (k < 1 || k > max_components) throw std::logic_error("state: k outside [1, M]");
  std::vector<int> seen(static_cast<std::size_t>(k), 0);
  for (int c : configuration) {
    if (c < 0 || c >= k) throw std::logic_error("state: configuration value outside [0, k)");
    ++seen[static_cast<std::size_t>(c)];
  }
  for (int s : seen)
    if (s == 0) throw std::logic_error("state: a distinct value is carried by no slot");
  for (int z : allocation)
    if (z < 0 || z >= max_components) throw std::logic_error("state: allocation outside [0, M)");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::logic_error("state: alpha not positive");
}

double draw_alpha(double alpha, int k, int max_components, double shape, double rate, Rng& rng) {
  const double m = static_cast<double>(max_components);
  const double eta = rng.beta(alpha + 1.0, m);
  const double post_rate = rate - std::log(eta);
  const double odds = (shape + k - 1.0) / (m * post_rate);
  const double p_high = odds / (1.0 + odds);
  const double post_shape = rng.uniform() < p_high ? shape + k : shape + k - 1.0;
  return rng.gamma(post_shape, post_rate);
}

SamplerState init_state(const ModelConfig& config, const Dataset& data, Rng& rng) {
  config.validate();
  data.validate();
  if (data.d() != config.dim())
    throw std::invalid_argument("init_state: data has " + std::to_string(data.d()) +
                                " columns, model expects " + std::to_string(config.dim()));
  const int m = config.max_components;
  SamplerState s;
  s.allocation.resize(static_cast<std::size_t>(data.n()));
  for (auto& z : s.allocation) z = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(m)));
  s.configuration.resize(static_cast<std::size_t>(m));
  const NormalWishart base = config.base_measure();
  for (int j = 0; j < m; ++j) {
    s.configuration[static_cast<std::size_t>(j)] = j;
    s.atoms.push_back(base.sample(rng));
  }
  s.alpha = rng.gamma(config.alpha_shape, config.alpha_rate);
  return s;
}

GibbsSampler::GibbsSampler(ModelConfig config, const Dataset& data, std::uint64_t seed)
    : config_(std::move(config)), data_(data), rng_(seed) {
  state_ = init_state(config_, data_, rng_);
  base_ = config_.base_measure();
  columns_ = data_.rows.transpose();
}

GibbsSampler::GibbsSampler(ModelConfig config, const Dataset& data, SamplerState state,
                           std::uint64_t seed)
    : config_(std::move(config)), data_(data), state_(std::move(state)), rng_(seed) {
  config_.validate();
  data_.validate();
  state_.check_invariants(config_.max_components);
  if (static_cast<Eigen::Index>(state_.allocation.size()) != data_.n())
    throw std::invalid_argument("GibbsSampler: allocation length differs from n");
  base_ = config_.base_measure();
  columns_ = data_.rows.transpose();
}

void GibbsSampler::refresh_atom_cache() {
  const auto d = config_.dim();
  cache_.resize(state_.atoms.size());
  for (std::size_t l = 0; l < state_.atoms.size(); ++l) {
    const Gaussian& g = state_.atoms[l];
    cache_[l].upper = g.precision_chol().transpose();
    cache_[l].shifted = cache_[l].upper * g.mean();
    cache_[l].constant = -0.5 * static_cast<double>(d) * kLogTwoPi + 0.5 * g.log_det_precision();
  }
}

void GibbsSampler::slot_log_weights(std::size_t unit, std::vector<double>& per_value,
                                    std::vector<double>& per_slot) const {
  const auto d = config_.dim();
  const double* y = columns_.col(static_cast<Eigen::Index>(unit)).data();
  for (std::size_t l = 0; l < cache_.size(); ++l) {
    const AtomCache& a = cache_[l];
    double q = 0.0;
    for (Eigen::Index r = 0; r < d; ++r) {
      double v = -a.shifted(r);
      for (Eigen::Index c = r; c < d; ++c) v += a.upper(r, c) * y[c];
      q += v * v;
    }
    per_value[l] = a.constant - 0.5 * q;
  }
  for (std::size_t j = 0; j < per_slot.size(); ++j)
    per_slot[j] = per_value[static_cast<std::size_t>(state_.configuration[j])];
}

void GibbsSampler::update_allocations() {
  refresh_atom_cache();
  std::vector<double> per_value(state_.atoms.size());
  std::vector<double> per_slot(static_cast<std::size_t>(config_.max_components));
  for (std::size_t i = 0; i < state_.allocation.size(); ++i) {
    slot_log_weights(i, per_value, per_slot);
    state_.allocation[i] = static_cast<int>(rng_.categorical_log(per_slot));
  }
}

std::vector<double> GibbsSampler::allocation_probabilities(std::size_t unit) {
  if (unit >= state_.allocation.size()) throw std::out_of_range("allocation_probabilities: unit");
  refresh_atom_cache();
  std::vector<double> per_value(state_.atoms.size());
  std::vector<double> per_slot(static_cast<std::size_t>(config_.max_components));
  slot_log_weights(unit, per_value, per_slot);
  const double norm = log_sum_exp(per_slot);
  for (auto& w : per_slot) w = std::exp(w - norm);
  return per_slot;
}

std::vector<SuffStats> GibbsSampler::slot_stats() const {
  std::vector<SuffStats> stats(static_cast<std::size_t>(config_.max_components),
                               SuffStats(config_.dim()));
  for (Eigen::Index i = 0; i < data_.n(); ++i)
    stats[static_cast<std::size_t>(state_.allocation[static_cast<std::size_t>(i)])].add(columns_.col(i));
  return stats;
}

double GibbsSampler::slot_log_marginal(int slot) const {
  return base_.log_marginal(slot_stats().at(static_cast<std::size_t>(slot)));
}

std::vector<double> GibbsSampler::urn_probabilities(int slot) const {
  const auto j = static_cast<std::size_t>(slot);
  if (j >= state_.configuration.size()) throw std::out_of_range("urn_probabilities: slot");
  const auto stats = slot_stats();
  std::vector<int> occupancy = state_.occupancy();
  --occupancy[static_cast<std::size_t>(state_.configuration[j])];
  std::vector<double> logw;
  urn_log_weights(occupancy, state_.atoms, stats[j], state_.alpha, base_, logw);
  const double norm = log_sum_exp(logw);
  for (auto& w : logw) w = std::exp(w - norm);
  return logw;
}

void GibbsSampler::update_configuration() {
  const auto stats = slot_stats();
  auto& cfg = state_.configuration;
  auto& atoms = state_.atoms;
  std::vector<int> occupancy = state_.occupancy();
  std::vector<double> logw;

  for (std::size_t j = 0; j < cfg.size(); ++j) {
    const int old = cfg[j];
    if (--occupancy[static_cast<std::size_t>(old)] == 0) {
      // Slot j carried the only copy of this value: drop it, moving the last
      // value into its place.
      const int last = static_cast<int>(atoms.size()) - 1;
      if (old != last) {
        atoms[static_cast<std::size_t>(old)] = std::move(atoms.back());
        occupancy[static_cast<std::size_t>(old)] = occupancy.back();
        for (auto& c : cfg)
          if (c == last) c = old;
      }
      atoms.pop_back();
      occupancy.pop_back();
    }
    cfg[j] = -1;

    const std::size_t k = atoms.size();
    urn_log_weights(occupancy, atoms, stats[j], state_.alpha, base_, logw);

    const std::size_t pick = rng_.categorical_log(logw);
    if (pick == k) {
      atoms.push_back(base_.posterior(stats[j]).sample(rng_));
      occupancy.push_back(1);
    } else {
      ++occupancy[pick];
    }
    cfg[j] = static_cast<int>(pick);
  }
  remix();
}

void GibbsSampler::remix() {
  const auto stats = slot_stats();
  std::vector<SuffStats> per_value(state_.atoms.size(), SuffStats(config_.dim()));
  for (std::size_t j = 0; j < stats.size(); ++j)
    per_value[static_cast<std::size_t>(state_.configuration[j])].merge(stats[j]);
  for (std::size_t l = 0; l < per_value.size(); ++l)
    state_.atoms[l] = base_.posterior(per_value[l]).sample(rng_);
}

void GibbsSampler::update_alpha() {
  state_.alpha = draw_alpha(state_.alpha, state_.num_distinct(), config_.max_components,
                            config_.alpha_shape, config_.alpha_rate, rng_);
}

void GibbsSampler::sweep() {
  update_allocations();
  update_configuration();
  update_alpha();
}

double GibbsSampler::log_joint() const {
  const double m = static_cast<double>(config_.max_components);
  double lp = 0.0;
  for (Eigen::Index i = 0; i < data_.n(); ++i) {
    const int slot = state_.allocation[static_cast<std::size_t>(i)];
    lp += state_.atoms[static_cast<std::size_t>(state_.configuration[static_cast<std::size_t>(slot)])]
              .log_density(columns_.col(i));
  }
  lp -= static_cast<double>(data_.n()) * std::log(m);
  // Ewens probability of the slot partition: alpha^k Gamma(alpha) / Gamma(alpha + M) prod Gamma(m_l).
  const double a = state_.alpha;
  lp += state_.num_distinct() * std::log(a) + std::lgamma(a) - std::lgamma(a + m);
  for (int occ : state_.occupancy()) lp += std::lgamma(static_cast<double>(occ));
  for (const auto& atom : state_.atoms) lp += base_.log_density(atom);
  lp += config_.alpha_shape * std::log(config_.alpha_rate) - std::lgamma(config_.alpha_shape) +
        (config_.alpha_shape - 1.0) * std::log(a) - config_.alpha_rate * a;
  return lp;
}

ClusteringTrace run_chain(const ModelConfig& config, const Dataset& data, const ChainOptions& options) {
  if (options.iterations <= options.burn_in)
    throw std::invalid_argument("run_chain: iterations must exceed burn_in");
  if (options.burn_in < 0) throw std::invalid_argument("run_chain: burn_in must be non-negative");
  if (options.thinning < 1) throw std::invalid_argument("run_chain: thinning must be at least 1");

  GibbsSampler sampler(config, data, options.seed);
  ClusteringTrace trace;
  trace.meta.n_units = static_cast<std::size_t>(data.n());
  trace.meta.seed = options.seed;
  trace.meta.config_hash = config.hash();
  trace.meta.burn_in = options.burn_in;
  trace.meta.thinning = options.thinning;

  for (long it = 1; it <= options.iterations; ++it) {
    try {
      sampler.sweep();
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(it) + ": " + e.what(), it);
    } catch (const std::domain_error& e) {
      throw NumericError("iteration " + std::to_string(it) + ": " + e.what(), it);
    }
    const bool keep = it > options.burn_in && (it - options.burn_in) % options.thinning == 0;
    if (keep) {
      if (options.check_invariants) {
        sampler.state().check_invariants(config.max_components);
        if (!std::isfinite(sampler.log_joint()))
          throw NumericError("iteration " + std::to_string(it) + ": joint log density not finite", it);
      }
      trace.entries.push_back({it, sampler.state().clustering(), sampler.state().alpha});
    }
    if (options.on_iteration) options.on_iteration(it, sampler.state());
  }
  return trace;
}

}  // namespace cc
