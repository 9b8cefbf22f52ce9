#include "cc/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cc {

double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

std::size_t Rng::categorical_log(std::span<const double> log_weights) {
  if (log_weights.empty()) throw std::invalid_argument("categorical_log: no weights");
  double m = -std::numeric_limits<double>::infinity();
  for (double v : log_weights) {
    if (std::isnan(v)) throw std::domain_error("categorical_log: NaN log weight");
    m = std::max(m, v);
  }
  if (!std::isfinite(m)) throw std::domain_error("categorical_log: no finite log weight");

  constexpr double kFloor = std::numeric_limits<double>::min();
  thread_local std::vector<double> w;
  w.resize(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = log_weights[i] == -std::numeric_limits<double>::infinity()
               ? 0.0
               : std::max(std::exp(log_weights[i] - m), kFloor);
    total += w[i];
  }
  double u = uniform() * total;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (u < w[i]) return i;
    u -= w[i];
  }
  // Rounding left u just above the running total; return the last positive.
  for (std::size_t i = w.size(); i-- > 0;)
    if (w[i] > 0.0) return i;
  return w.size() - 1;
}

}  // namespace cc
