#include "cc/metric.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cc/assignment.hpp"
#include "cc/parallel.hpp"

namespace cc {

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::exact ? "exact" : "approx";
}

MetricKind parse_metric_kind(std::string_view name) {
  if (name == "exact") return MetricKind::exact;
  if (name == "approx") return MetricKind::approx;
  throw std::invalid_argument("unknown metric kind '" + std::string(name) +
                              "' (expected exact or approx)");
}

namespace {

double ratio_distance(std::int64_t agreement, std::int64_t total) {
  return static_cast<double>(total - agreement) / static_cast<double>(total);
}

std::int64_t row_max_sum(const ContingencyTable& t) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    std::int64_t m = 0;
    for (std::size_t j = 0; j < t.cols(); ++j) m = std::max(m, t(i, j));
    s += m;
  }
  return s;
}

std::int64_t col_max_sum(const ContingencyTable& t) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < t.cols(); ++j) {
    std::int64_t m = 0;
    for (std::size_t i = 0; i < t.rows(); ++i) m = std::max(m, t(i, j));
    s += m;
  }
  return s;
}

}  // namespace

DistanceResult exact_distance(const ContingencyTable& table) {
  const auto match = max_weight_assignment(table.rows(), table.cols(), table.counts());
  DistanceResult r;
  r.kind = MetricKind::exact;
  r.agreement = match.total;
  r.total = table.total();
  r.value = ratio_distance(r.agreement, r.total);
  return r;
}

DistanceResult exact_distance(const Clustering& a, const Clustering& b) {
  return exact_distance(ContingencyTable(a, b));
}

double directed_approx_distance(const ContingencyTable& table) {
  return ratio_distance(row_max_sum(table), table.total());
}

DistanceResult approx_distance(const ContingencyTable& table) {
  const std::int64_t rows = row_max_sum(table);
  const std::int64_t cols = col_max_sum(table);
  DistanceResult r;
  r.kind = MetricKind::approx;
  r.total = table.total();
  r.agreement = std::min(rows, cols);
  r.directed = std::pair{ratio_distance(rows, r.total), ratio_distance(cols, r.total)};
  r.value = ratio_distance(r.agreement, r.total);
  return r;
}

DistanceResult approx_distance(const Clustering& a, const Clustering& b) {
  return approx_distance(ContingencyTable(a, b));
}

DistanceResult distance(const Clustering& a, const Clustering& b, MetricKind kind) {
  return kind == MetricKind::exact ? exact_distance(a, b) : approx_distance(a, b);
}

double distance_upper_bound(std::int64_t n, std::int64_t k) {
  if (k <= 0) throw std::invalid_argument("distance_upper_bound: k must be positive");
  if (n <= 0) throw std::invalid_argument("distance_upper_bound: n must be positive");
  const std::int64_t m = n / (k * k);
  return ratio_distance(m * k, n);
}

DistanceMatrix DistanceMatrix::subset(std::span<const std::size_t> positions) const {
  DistanceMatrix out(positions.size());
  for (std::size_t a = 0; a < positions.size(); ++a)
    for (std::size_t b = a + 1; b < positions.size(); ++b)
      out.set(a, b, (*this)(positions[a], positions[b]));
  return out;
}

DistanceMatrix distance_matrix(std::span<const Clustering> samples, MetricKind kind,
                               unsigned threads) {
  const std::size_t n = samples.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (samples[i].size() != samples[0].size()) {
      throw std::invalid_argument("distance_matrix: sample " + std::to_string(i) + " covers " +
                                  std::to_string(samples[i].size()) + " units, expected " +
                                  std::to_string(samples[0].size()));
    }
  }
  DistanceMatrix m(n);
  // Row i writes only cells (i, j > i), so rows can be filled concurrently.
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (samples[i] == samples[j]) continue;
      m.set(i, j, distance(samples[i], samples[j], kind).value);
    }
  });
  return m;
}

}  // namespace cc
