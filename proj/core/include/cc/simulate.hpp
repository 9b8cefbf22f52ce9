#pragma once

#include <cstdint>
#include <span>

#include "cc/clustering.hpp"
#include "cc/dataset.hpp"

namespace cc {

struct SimulatedData {
  Dataset data;
  /// Generating component of each row (canonicalized).
  Clustering truth;
  /// Generating component index of each row, in the order of `means`.
  std::vector<int> component;
};

/// n draws from the equal-weight mixture sum_i N(means[i], sigma^2): a
/// uniform component choice followed by a normal draw, per row.
SimulatedData generate_mixture_1d(std::size_t n, std::span<const double> means, double sigma,
                                  std::uint64_t seed);

}  // namespace cc
