#include "cc/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cc {

Assignment max_weight_assignment(std::size_t rows, std::size_t cols,
                                 std::span<const std::int64_t> weights) {
  if (weights.size() != rows * cols) {
    throw std::invalid_argument("max_weight_assignment: weight matrix has wrong size");
  }
  Assignment result;
  result.row_to_col.assign(rows, -1);
  if (rows == 0 || cols == 0) return result;

  const std::size_t n = std::max(rows, cols);
  std::int64_t wmax = 0;
  for (auto w : weights) {
    if (w < 0) throw std::invalid_argument("max_weight_assignment: negative weight");
    wmax = std::max(wmax, w);
  }
  // Minimize wmax - w over the zero-padded square matrix.
  auto cost = [&](std::size_t i, std::size_t j) -> std::int64_t {
    const std::int64_t w = (i < rows && j < cols) ? weights[i * cols + j] : 0;
    return wmax - w;
  };

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based potentials; index 0 is the virtual root of each augmenting tree.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> match_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    match_col[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match_col[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = match_col[j] - 1;
    const std::size_t c = j - 1;
    if (i < rows && c < cols) {
      result.row_to_col[i] = static_cast<int>(c);
      result.total += weights[i * cols + c];
    }
  }
  return result;
}

}  // namespace cc
