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

#include <algorithm>

#include "hrex/eval/kernels.hpp"
#include "hrex/eval/levenshtein.hpp"
#include "hrex/eval/similarity.hpp"
#include "hrex/text.hpp"

namespace hrex::eval {

double order_independent_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

namespace detail {

// Shared by both kernel families: the score of one sample.
double mean_pairwise(const std::vector<std::string>& runs) {
  std::vector<std::u32string> cps;
  cps.reserve(runs.size());
  for (const auto& r : runs) cps.push_back(to_code_points(r));
  std::vector<double> sims;
  sims.reserve(runs.size() * (runs.size() - 1) / 2);
  for (size_t i = 0; i < cps.size(); ++i) {
    for (size_t j = i + 1; j < cps.size(); ++j) sims.push_back(normalized_similarity(cps[i], cps[j]));
  }
  const double pairs = static_cast<double>(sims.size());
  return order_independent_sum(std::move(sims)) / pairs;
}

}  // namespace detail

namespace serial {

SimMatrix similarity_matrix(const std::vector<std::string>& preds,
                            const std::vector<std::string>& golds, const SimilarityBackend& sim) {
  SimMatrix m(preds.size(), golds.size());
  for (size_t r = 0; r < preds.size(); ++r) {
    for (size_t c = 0; c < golds.size(); ++c) m.at(r, c) = sim.score(preds[r], golds[c]);
  }
  return m;
}

std::vector<double> pairwise_mean_similarity(const std::vector<std::vector<std::string>>& runs) {
  std::vector<double> out(runs.size());
  for (size_t i = 0; i < runs.size(); ++i) out[i] = detail::mean_pairwise(runs[i]);
  return out;
}

std::vector<PRF> exact_match_batch(std::span<const SamplePair> samples, bool ignore_case) {
  std::vector<PRF> out(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    out[i] = exact_match({samples[i].gold.begin(), samples[i].gold.end()},
                         {samples[i].pred.begin(), samples[i].pred.end()}, ignore_case);
  }
  return out;
}

std::vector<PRF> soft_match_batch(std::span<const SamplePair> samples, const SimilarityBackend& sim,
                                  const SoftOptions& options) {
  std::vector<PRF> out(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    out[i] = soft_match({samples[i].gold.begin(), samples[i].gold.end()},
                        {samples[i].pred.begin(), samples[i].pred.end()}, sim, options);
  }
  return out;
}

}  // namespace serial
}  // namespace hrex::eval
