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

#pragma once

#include <cstddef>
#include <vector>

namespace hrex::eval {

// Dense row-major matrix: rows are predictions, columns gold items.
struct SimMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;

  SimMatrix() = default;
  SimMatrix(size_t r, size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  double& at(size_t r, size_t c) { return values[r * cols + c]; }
  double at(size_t r, size_t c) const { return values[r * cols + c]; }

  friend bool operator==(const SimMatrix&, const SimMatrix&) = default;
};

struct Match {
  size_t pred;
  size_t gold;
  double similarity;

  friend bool operator==(const Match&, const Match&) = default;
};

enum class Alignment { Greedy, Optimal };

/// Repeatedly takes the largest remaining cell, ties broken by the lowest
/// (pred, gold) index pair; each row and column is used at most once. Cells
/// of similarity 0 are never matched.
std::vector<Match> greedy_align(const SimMatrix& m);

/// Maximum-total one-to-one assignment (Hungarian method). Zero cells are
/// dropped from the result.
std::vector<Match> optimal_align(const SimMatrix& m);

std::vector<Match> align(const SimMatrix& m, Alignment how);

}  // namespace hrex::eval
