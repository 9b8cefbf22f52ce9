#include "cc/clustering.hpp"

#include <sstream>

namespace cc {

Clustering::Clustering(std::vector<int> canonical_labels) : labels_(std::move(canonical_labels)) {
  if (labels_.empty()) throw std::invalid_argument("Clustering: empty label sequence");
  int next = 0;
  for (std::size_t u = 0; u < labels_.size(); ++u) {
    const int l = labels_[u];
    if (l < 0 || l > next) {
      throw std::invalid_argument("Clustering: labels not canonical at unit " + std::to_string(u));
    }
    if (l == next) ++next;
  }
  num_clusters_ = next;
}

std::vector<std::int64_t> Clustering::cluster_sizes() const {
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(num_clusters_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

ContingencyTable::ContingencyTable(const Clustering& a, const Clustering& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("contingency_table: clusterings cover " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()) + " units");
  }
  rows_ = static_cast<std::size_t>(a.num_clusters());
  cols_ = static_cast<std::size_t>(b.num_clusters());
  counts_.assign(rows_ * cols_, 0);
  for (std::size_t u = 0; u < a.size(); ++u) {
    ++counts_[static_cast<std::size_t>(a[u]) * cols_ + static_cast<std::size_t>(b[u])];
  }
  tally();
}

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols,
                                   std::vector<std::int64_t> counts)
    : rows_(rows), cols_(cols), counts_(std::move(counts)) {
  if (rows_ == 0 || cols_ == 0 || counts_.size() != rows_ * cols_) {
    throw std::invalid_argument("ContingencyTable: shape does not match count vector");
  }
  for (auto c : counts_) {
    if (c < 0) throw std::invalid_argument("ContingencyTable: negative cell count");
  }
  tally();
  if (total_ == 0) throw std::invalid_argument("ContingencyTable: table is empty");
}

ContingencyTable ContingencyTable::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) throw std::invalid_argument("ContingencyTable: no rows");
  const std::size_t cols = rows.front().size();
  std::vector<std::int64_t> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ContingencyTable: ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return ContingencyTable(rows.size(), cols, std::move(flat));
}

void ContingencyTable::tally() {
  row_sums_.assign(rows_, 0);
  col_sums_.assign(cols_, 0);
  total_ = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto c = counts_[i * cols_ + j];
      row_sums_[i] += c;
      col_sums_[j] += c;
      total_ += c;
    }
  }
}

ContingencyTable ContingencyTable::transposed() const {
  std::vector<std::int64_t> t(counts_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = counts_[i * cols_ + j];
  return ContingencyTable(cols_, rows_, std::move(t));
}

std::string ContingencyTable::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << counts_[i * cols_ + j];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace cc
