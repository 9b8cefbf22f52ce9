#pragma once

#include <span>
#include <vector>

#include "cc/trace.hpp"

namespace cc {

struct ScalarTraceSummary {
  double mean = 0.0;
  double variance = 0.0;
  /// Effective sample size from Geyer's initial positive sequence.
  double ess = 0.0;
  /// Lag-1 autocorrelation.
  double lag1 = 0.0;
};

/// Autocorrelation at lags 0..max_lag (biased estimator, divisor n).
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

ScalarTraceSummary summarize_scalar_trace(std::span<const double> x);

/// Per-entry cluster counts and concentration values of a trace.
std::vector<double> cluster_count_series(const ClusteringTrace& trace);
std::vector<double> alpha_series(const ClusteringTrace& trace);

}  // namespace cc
