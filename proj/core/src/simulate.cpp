#include "cc/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "cc/random.hpp"

namespace cc {

SimulatedData generate_mixture_1d(std::size_t n, std::span<const double> means, double sigma,
                                  std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_mixture_1d: n must be at least 1");
  if (means.empty()) throw std::invalid_argument("generate_mixture_1d: no component means");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("generate_mixture_1d: sigma must be positive and finite");

  Rng rng(seed);
  SimulatedData out;
  out.data.rows.resize(static_cast<Eigen::Index>(n), 1);
  out.data.column_names = {"y"};
  out.component.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = rng.uniform_index(means.size());
    out.component[i] = static_cast<int>(c);
    out.data.rows(static_cast<Eigen::Index>(i), 0) = rng.normal(means[c], sigma);
  }
  out.truth = canonicalize(out.component);
  return out;
}

}  // namespace cc
