#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cc/clustering.hpp"
#include "cc/dataset.hpp"
#include "cc/normal_wishart.hpp"
#include "cc/random.hpp"
#include "cc/trace.hpp"

namespace cc {

/// Finite-M mixture of multivariate normals whose M component parameters are
/// draws from DP(alpha G0), with G0 the Normal-Wishart
///
///   precision ~ Wishart(dof = s, scale matrix S^{-1})   (E = s S^{-1})
///   mean | precision ~ N(mu0, psi precision^{-1})
///
/// and alpha ~ Gamma(alpha_shape, rate alpha_rate).
struct ModelConfig {
  int max_components = 30;
  double dof = 4.0;
  Eigen::MatrixXd scale;
  Eigen::VectorXd mu0;
  double psi = 1.0;
  double alpha_shape = 0.1;
  double alpha_rate = 0.1;

  /// mu0 and S from the data mean and covariance, s = max(4, d), psi = 1,
  /// M = 30, alpha ~ Gamma(0.1, 0.1). A covariance that is not SPD
  /// (duplicate rows, constant columns) gets a ridge of 1e-8 trace(S) / d.
  static ModelConfig defaults_for(const Dataset& data);

  Eigen::Index dim() const { return mu0.size(); }
  NormalWishart base_measure() const;
  /// Throws std::invalid_argument on an invalid configuration.
  void validate() const;
  /// Stable text form (17 significant digits) used for hashing and echoes.
  std::string describe() const;
  std::uint64_t hash() const;
};

/// Latent state of one Gibbs iteration. Indices are 0-based: allocation[i]
/// is the component slot of unit i, configuration[j] the distinct value
/// taken by slot j.
struct SamplerState {
  std::vector<int> allocation;
  std::vector<int> configuration;
  std::vector<Gaussian> atoms;
  double alpha = 1.0;

  int num_distinct() const { return static_cast<int>(atoms.size()); }
  /// Units share a cluster iff their slots carry the same distinct value.
  Clustering clustering() const;
  int num_occupied() const;
  /// Number of slots carrying each distinct value.
  std::vector<int> occupancy() const;
  /// Throws std::logic_error if the configuration is not a surjection onto
  /// [0, k), an allocation is out of range, or sizes disagree.
  void check_invariants(int max_components) const;
};

/// One draw of the concentration given k distinct values among M slots:
/// eta ~ Beta(alpha + 1, M), then a two-component Gamma mixture.
double draw_alpha(double alpha, int k, int max_components, double shape, double rate, Rng& rng);

/// Uniform allocations, c_j = j with every atom drawn from G0, alpha from its
/// prior.
SamplerState init_state(const ModelConfig& config, const Dataset& data, Rng& rng);

class GibbsSampler {
 public:
  GibbsSampler(ModelConfig config, const Dataset& data, std::uint64_t seed);
  GibbsSampler(ModelConfig config, const Dataset& data, SamplerState state, std::uint64_t seed);

  /// Resamples every z_i from its full conditional over the M slots.
  void update_allocations();
  /// Polya-urn sweep over the M slots, then remix().
  void update_configuration();
  /// Redraws each distinct value from its conjugate posterior given the units
  /// currently allocated to it.
  void remix();
  void update_alpha();
  /// update_allocations, update_configuration, update_alpha.
  void sweep();

  const SamplerState& state() const { return state_; }
  const ModelConfig& config() const { return config_; }
  Rng& rng() { return rng_; }

  /// log p(Y, Z, C, theta*, alpha).
  double log_joint() const;

  /// Log marginal likelihood of the units currently in slot j under G0.
  double slot_log_marginal(int slot) const;

  /// Full conditional of z_i over the M slots under the current atoms.
  std::vector<double> allocation_probabilities(std::size_t unit);

  /// Full conditional of c_j given the other slots: entry l < k is the
  /// probability of distinct value l (zero for a value carried only by slot
  /// j), entry k the probability of a fresh value.
  std::vector<double> urn_probabilities(int slot) const;

 private:
  std::vector<SuffStats> slot_stats() const;
  void refresh_atom_cache();
  void slot_log_weights(std::size_t unit, std::vector<double>& per_value, std::vector<double>& per_slot) const;

  ModelConfig config_;
  NormalWishart base_;
  const Dataset& data_;
  Eigen::MatrixXd columns_;  // d x n, one observation per column
  SamplerState state_;
  Rng rng_;

  struct AtomCache {
    Eigen::MatrixXd upper;    // L^T, with precision = L L^T
    Eigen::VectorXd shifted;  // L^T mean
    double constant = 0.0;
  };
  std::vector<AtomCache> cache_;
};

struct ChainOptions {
  long iterations = 6000;
  long burn_in = 1000;
  long thinning = 5;
  std::uint64_t seed = 1;
  /// Verify state invariants and a finite joint density at every kept
  /// iteration.
  bool check_invariants = false;
  std::function<void(long iteration, const SamplerState&)> on_iteration;
};

/// Runs the chain and records the induced clustering at each kept iteration
/// (iteration > burn_in and (iteration - burn_in) % thinning == 0, counting
/// from 1). Numeric failures surface as NumericError carrying the iteration.
ClusteringTrace run_chain(const ModelConfig& config, const Dataset& data, const ChainOptions& options);

}  // namespace cc
