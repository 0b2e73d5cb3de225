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

// Data-parallel scoring loops. Every kernel has a serial reference and an
// OpenMP version; both produce bit-identical results because each output
// element is computed by exactly one thread in a fixed order.

#include <span>
#include <string>
#include <vector>

#include "hrex/eval/alignment.hpp"
#include "hrex/eval/metrics.hpp"

namespace hrex::eval {

class SimilarityBackend;

struct SamplePair {
  std::span<const HyperFact> gold;
  std::span<const HyperFact> pred;
};

namespace serial {

SimMatrix similarity_matrix(const std::vector<std::string>& preds,
                            const std::vector<std::string>& golds, const SimilarityBackend& sim);
/// Per-sample mean pairwise normalized similarity; every sample needs >= 2 runs.
std::vector<double> pairwise_mean_similarity(const std::vector<std::vector<std::string>>& runs);
std::vector<PRF> exact_match_batch(std::span<const SamplePair> samples, bool ignore_case);
std::vector<PRF> soft_match_batch(std::span<const SamplePair> samples, const SimilarityBackend& sim,
                                  const SoftOptions& options);

}  // namespace serial

namespace parallel {

SimMatrix similarity_matrix(const std::vector<std::string>& preds,
                            const std::vector<std::string>& golds, const SimilarityBackend& sim);
std::vector<double> pairwise_mean_similarity(const std::vector<std::vector<std::string>>& runs);
std::vector<PRF> exact_match_batch(std::span<const SamplePair> samples, bool ignore_case);
std::vector<PRF> soft_match_batch(std::span<const SamplePair> samples, const SimilarityBackend& sim,
                                  const SoftOptions& options);

}  // namespace parallel

/// Sum of the values in ascending order; the result does not depend on the
/// input order.
double order_independent_sum(std::vector<double> values);

}  // namespace hrex::eval
