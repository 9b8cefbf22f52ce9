#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cc {

struct Assignment {
  std::int64_t total = 0;
  /// row_to_col[i] is the column matched to row i, or -1 when row i is left
  /// unmatched (only possible when rows > cols).
  std::vector<int> row_to_col;
};

/// Maximum-weight one-to-one matching of rows to columns of a non-negative
/// integer matrix (row-major, rows x cols). The smaller side is padded with
/// zero rows/columns so the problem is square, then solved with the
/// shortest-augmenting-path Hungarian method in O(k^3), k = max(rows, cols).
Assignment max_weight_assignment(std::size_t rows, std::size_t cols,
                                 std::span<const std::int64_t> weights);

}  // namespace cc
