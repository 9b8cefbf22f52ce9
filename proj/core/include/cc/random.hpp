#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace cc {

/// log(sum(exp(x))) without overflow; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> x);

/// Seeded random source. All draws go through the std distributions on a
/// 64-bit Mersenne twister, so a seed fixes every stream bit-for-bit for a
/// given standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::size_t uniform_index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  double normal(double mean, double sd) { return mean + sd * normal(); }
  /// Gamma with shape/rate parameterization (mean shape / rate).
  double gamma(double shape, double rate) {
    return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
  }
  double beta(double a, double b) {
    const double x = gamma(a, 1.0);
    const double y = gamma(b, 1.0);
    return x / (x + y);
  }
  double chi_squared(double dof) { return std::chi_squared_distribution<double>(dof)(engine_); }

  /// Draws an index with probability proportional to exp(log_weights[i]).
  /// Weights more than ~745 nats below the largest are floored at the
  /// smallest normal double rather than dropped to zero.
  std::size_t categorical_log(std::span<const double> log_weights);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cc
