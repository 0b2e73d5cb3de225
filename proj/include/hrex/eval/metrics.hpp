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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hrex/eval/alignment.hpp"
#include "hrex/fact.hpp"

namespace hrex::eval {

class SimilarityBackend;

// Precision/recall/F1 with the supports they were computed from. For exact
// match `matched` is an integer count; for soft match it is the summed
// similarity of aligned pairs.
struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t n_pred = 0;
  size_t n_gold = 0;
  double matched = 0.0;

  friend bool operator==(const PRF&, const PRF&) = default;
};

/// Both sides empty gives 1/1/1; exactly one side empty gives 0/0/0.
PRF prf_from_counts(double matched, size_t n_pred, size_t n_gold);

/// 2PR / (P + R), or 0 when P + R = 0.
double f1_score(double precision, double recall);

/// Quintuple-set precision/recall/F1. Both sides are expanded and
/// deduplicated before intersecting.
PRF exact_match(const std::vector<HyperFact>& gold, const std::vector<HyperFact>& pred,
                bool ignore_case = false);

struct SoftOptions {
  Alignment alignment = Alignment::Greedy;
  bool ignore_case = false;
};

/// Serializes each fact, deduplicates each side, aligns one-to-one and
/// divides the matched similarity mass by |pred| and |gold|. Throws
/// SimilarityOutOfRange when the backend leaves [0, 1].
PRF soft_match(const std::vector<HyperFact>& gold, const std::vector<HyperFact>& pred,
               const SimilarityBackend& sim, const SoftOptions& options = {});

/// Whole-output comparison: each side's serialized facts joined by '\n'
/// are scored as one text pair, so P = R = F1 = similarity.
PRF soft_match_blob(const std::vector<HyperFact>& gold, const std::vector<HyperFact>& pred,
                    const SimilarityBackend& sim, bool ignore_case = false);

/// Serialized facts with duplicates removed, first occurrence kept.
std::vector<std::string> serialize_unique(const std::vector<HyperFact>& facts, bool ignore_case);

enum class Aggregation { Micro, Macro };

/// Micro pools matched/n_pred/n_gold; macro averages P, R and F1. Throws
/// EmptyInput on an empty list.
PRF aggregate(const std::vector<PRF>& per_sample, Aggregation mode);

struct RunSet {
  std::string id;
  std::vector<std::string> runs;
};

struct ReproReport {
  std::vector<std::pair<std::string, double>> per_sample;
  double corpus_score = 0.0;
  size_t n_runs = 0;
};

/// Mean normalized Levenshtein similarity over all unordered run pairs of a
/// sample, averaged over samples. Sums run over sorted values so that the
/// result is bit-identical under any reordering of runs or samples. Throws
/// EmptyInput, TooFewRuns or RunCountMismatch.
ReproReport reproducibility(const std::vector<RunSet>& samples);
ReproReport reproducibility(const std::map<std::string, std::vector<std::string>>& samples);

}  // namespace hrex::eval
