#include "cc/diagnostics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cc {

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("autocorrelation: empty series");
  max_lag = std::min(max_lag, n - 1);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  std::vector<double> rho(max_lag + 1, 0.0);
  rho[0] = 1.0;
  if (c0 == 0.0) return rho;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) c += (x[t] - mean) * (x[t + lag] - mean);
    rho[lag] = c / c0;
  }
  return rho;
}

ScalarTraceSummary summarize_scalar_trace(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("summarize_scalar_trace: empty series");
  ScalarTraceSummary s;
  for (double v : x) s.mean += v;
  s.mean /= static_cast<double>(n);
  for (double v : x) s.variance += (v - s.mean) * (v - s.mean);
  s.variance = n > 1 ? s.variance / static_cast<double>(n - 1) : 0.0;
  if (n < 4 || s.variance == 0.0) {
    s.ess = static_cast<double>(n);
    return s;
  }
  const auto rho = autocorrelation(x, n - 1);
  s.lag1 = rho[1];
  // Sum consecutive pairs while they stay positive.
  double tau = -1.0;
  for (std::size_t m = 0; 2 * m + 1 < rho.size(); ++m) {
    const double pair = rho[2 * m] + rho[2 * m + 1];
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  s.ess = static_cast<double>(n) / std::max(tau, 1.0 / static_cast<double>(n));
  s.ess = std::min(s.ess, static_cast<double>(n) * 10.0);
  return s;
}

std::vector<double> cluster_count_series(const ClusteringTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& e : trace.entries) out.push_back(e.num_clusters());
  return out;
}

std::vector<double> alpha_series(const ClusteringTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& e : trace.entries) out.push_back(e.alpha);
  return out;
}

}  // namespace cc
