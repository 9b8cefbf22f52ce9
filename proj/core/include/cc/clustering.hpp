#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cc {

/// A partition of n units stored in canonical form: the first unit carries
/// label 0 and every new label is the smallest unused non-negative integer.
/// Two clusterings describe the same partition iff their label vectors are
/// equal.
class Clustering {
 public:
  Clustering() = default;

  /// Wraps labels that are already canonical. Throws std::invalid_argument
  /// otherwise; use canonicalize() for arbitrary identifiers.
  explicit Clustering(std::vector<int> canonical_labels);

  std::span<const int> labels() const { return labels_; }
  int operator[](std::size_t unit) const { return labels_[unit]; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  int num_clusters() const { return num_clusters_; }

  /// Units per cluster, indexed by label.
  std::vector<std::int64_t> cluster_sizes() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<int> labels_;
  int num_clusters_ = 0;
};

/// Renumbers arbitrary identifiers by first occurrence.
template <typename Label>
Clustering canonicalize(std::span<const Label> raw) {
  if (raw.empty()) throw std::invalid_argument("canonicalize: empty label sequence");
  std::unordered_map<Label, int> seen;
  std::vector<int> out;
  out.reserve(raw.size());
  for (const auto& label : raw) {
    auto [it, inserted] = seen.try_emplace(label, static_cast<int>(seen.size()));
    out.push_back(it->second);
  }
  return Clustering(std::move(out));
}

template <typename Label>
Clustering canonicalize(const std::vector<Label>& raw) {
  return canonicalize(std::span<const Label>(raw));
}

inline int num_clusters(const Clustering& c) { return c.num_clusters(); }

/// Cross-tabulation n_ij of two clusterings over the same units, or a table
/// supplied directly as counts (rows x cols, row-major).
class ContingencyTable {
 public:
  ContingencyTable(const Clustering& a, const Clustering& b);
  ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> counts);
  static ContingencyTable from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return counts_[i * cols_ + j]; }
  std::span<const std::int64_t> counts() const { return counts_; }
  std::span<const std::int64_t> row_sums() const { return row_sums_; }
  std::span<const std::int64_t> col_sums() const { return col_sums_; }
  std::int64_t total() const { return total_; }

  ContingencyTable transposed() const;

  /// Comma-separated dump, one table row per line.
  std::string to_csv() const;

 private:
  void tally();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> row_sums_;
  std::vector<std::int64_t> col_sums_;
  std::int64_t total_ = 0;
};

inline ContingencyTable contingency_table(const Clustering& a, const Clustering& b) {
  return ContingencyTable(a, b);
}

}  // namespace cc
