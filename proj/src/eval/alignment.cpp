// Copyright 2026 The hrex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hrex/eval/alignment.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace hrex::eval {

std::vector<Match> greedy_align(const SimMatrix& m) {
  std::vector<Match> cells;
  cells.reserve(m.values.size());
  for (size_t r = 0; r < m.rows; ++r) {
    for (size_t c = 0; c < m.cols; ++c) {
      if (m.at(r, c) > 0.0) cells.push_back({r, c, m.at(r, c)});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Match& a, const Match& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return std::tie(a.pred, a.gold) < std::tie(b.pred, b.gold);
  });
  std::vector<bool> row_used(m.rows, false), col_used(m.cols, false);
  std::vector<Match> out;
  for (const Match& cell : cells) {
    if (row_used[cell.pred] || col_used[cell.gold]) continue;
    row_used[cell.pred] = col_used[cell.gold] = true;
    out.push_back(cell);
    if (out.size() == std::min(m.rows, m.cols)) break;
  }
  return out;
}

std::vector<Match> optimal_align(const SimMatrix& m) {
  const size_t n = std::max(m.rows, m.cols);
  if (n == 0) return {};
  // Square cost matrix, 1-based, minimizing (1 - similarity); padding cells
  // cost 1 like a zero-similarity cell.
  auto cost = [&](size_t i, size_t j) {
    if (i > m.rows || j > m.cols) return 1.0;
    return 1.0 - m.at(i - 1, j - 1);
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<size_t> p(n + 1, 0), way(n + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    p[0] = i;
    size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const size_t i0 = p[j0];
      double delta = kInf;
      size_t j1 = 0;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Match> out;
  for (size_t j = 1; j <= n; ++j) {
    const size_t i = p[j];
    if (i == 0 || i > m.rows || j > m.cols) continue;
    const double s = m.at(i - 1, j - 1);
    if (s > 0.0) out.push_back({i - 1, j - 1, s});
  }
  std::sort(out.begin(), out.end(),
            [](const Match& a, const Match& b) { return a.pred < b.pred; });
  return out;
}

std::vector<Match> align(const SimMatrix& m, Alignment how) {
  return how == Alignment::Greedy ? greedy_align(m) : optimal_align(m);
}

}  // namespace hrex::eval
