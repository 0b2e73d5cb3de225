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

#include "hrex/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "hrex/error.hpp"
#include "hrex/eval/kernels.hpp"
#include "hrex/eval/similarity.hpp"
#include "hrex/text.hpp"

namespace hrex::eval {

double f1_score(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

PRF prf_from_counts(double matched, size_t n_pred, size_t n_gold) {
  PRF out;
  out.n_pred = n_pred;
  out.n_gold = n_gold;
  out.matched = matched;
  if (n_pred == 0 && n_gold == 0) {
    out.precision = out.recall = out.f1 = 1.0;
    return out;
  }
  if (n_pred == 0 || n_gold == 0) return out;
  out.precision = matched / static_cast<double>(n_pred);
  out.recall = matched / static_cast<double>(n_gold);
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

namespace {

std::set<Quintuple> quintuple_set(const std::vector<HyperFact>& facts, bool ignore_case) {
  std::set<Quintuple> out;
  for (const auto& f : facts) {
    for (Quintuple q : expand_quintuples(f)) {
      if (ignore_case) {
        q.head = casefold(q.head);
        q.relation = casefold(q.relation);
        q.tail = casefold(q.tail);
        if (q.qualifier) {
          q.qualifier->first = casefold(q.qualifier->first);
          q.qualifier->second = casefold(q.qualifier->second);
        }
      }
      out.insert(std::move(q));
    }
  }
  return out;
}

void check_range(const SimMatrix& m) {
  for (double v : m.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::SimilarityOutOfRange, std::to_string(v));
    }
  }
}

}  // namespace

PRF exact_match(const std::vector<HyperFact>& gold, const std::vector<HyperFact>& pred,
                bool ignore_case) {
  const auto g = quintuple_set(gold, ignore_case);
  const auto p = quintuple_set(pred, ignore_case);
  size_t matched = 0;
  for (const auto& q : p) matched += g.count(q);
  return prf_from_counts(static_cast<double>(matched), p.size(), g.size());
}

std::vector<std::string> serialize_unique(const std::vector<HyperFact>& facts, bool ignore_case) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& f : facts) {
    std::string s = serialize_fact(f);
    if (ignore_case) s = casefold(s);
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

PRF soft_match(const std::vector<HyperFact>& gold, const std::vector<HyperFact>& pred,
               const SimilarityBackend& sim, const SoftOptions& options) {
  const auto g = serialize_unique(gold, options.ignore_case);
  const auto p = serialize_unique(pred, options.ignore_case);
  if (g.empty() || p.empty()) return prf_from_counts(0.0, p.size(), g.size());
  const SimMatrix m = serial::similarity_matrix(p, g, sim);
  check_range(m);
  double mass = 0.0;
  for (const Match& match : align(m, options.alignment)) mass += match.similarity;
  return prf_from_counts(mass, p.size(), g.size());
}

PRF soft_match_blob(const std::vector<HyperFact>& gold, const std::vector<HyperFact>& pred,
                    const SimilarityBackend& sim, bool ignore_case) {
  auto join = [](const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
      if (!out.empty()) out += '\n';
      out += l;
    }
    return out;
  };
  const auto g = serialize_unique(gold, ignore_case);
  const auto p = serialize_unique(pred, ignore_case);
  if (g.empty() || p.empty()) return prf_from_counts(0.0, p.empty() ? 0 : 1, g.empty() ? 0 : 1);
  const double s = sim.score(join(p), join(g));
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::SimilarityOutOfRange, std::to_string(s));
  return prf_from_counts(s, 1, 1);
}

PRF aggregate(const std::vector<PRF>& per_sample, Aggregation mode) {
  if (per_sample.empty()) throw Error(ErrorKind::EmptyInput, "no samples to aggregate");
  if (mode == Aggregation::Micro) {
    double matched = 0.0;
    size_t n_pred = 0, n_gold = 0;
    for (const PRF& s : per_sample) {
      matched += s.matched;
      n_pred += s.n_pred;
      n_gold += s.n_gold;
    }
    return prf_from_counts(matched, n_pred, n_gold);
  }
  PRF out;
  for (const PRF& s : per_sample) {
    out.precision += s.precision;
    out.recall += s.recall;
    out.f1 += s.f1;
    out.n_pred += s.n_pred;
    out.n_gold += s.n_gold;
    out.matched += s.matched;
  }
  const double n = static_cast<double>(per_sample.size());
  out.precision /= n;
  out.recall /= n;
  out.f1 /= n;
  return out;
}

ReproReport reproducibility(const std::vector<RunSet>& samples) {
  if (samples.empty()) throw Error(ErrorKind::EmptyInput, "no samples");
  const size_t n_runs = samples.front().runs.size();
  for (const auto& s : samples) {
    if (s.runs.size() < 2) {
      throw Error(ErrorKind::TooFewRuns, s.id + " has " + std::to_string(s.runs.size()) + " run(s)");
    }
    if (s.runs.size() != n_runs) {
      throw Error(ErrorKind::RunCountMismatch,
                  s.id + " has " + std::to_string(s.runs.size()) + ", expected " +
                      std::to_string(n_runs));
    }
  }
  std::vector<std::vector<std::string>> runs;
  runs.reserve(samples.size());
  for (const auto& s : samples) runs.push_back(s.runs);
  const std::vector<double> scores = parallel::pairwise_mean_similarity(runs);

  ReproReport report;
  report.n_runs = n_runs;
  for (size_t i = 0; i < samples.size(); ++i) report.per_sample.emplace_back(samples[i].id, scores[i]);
  report.corpus_score = order_independent_sum(scores) / static_cast<double>(scores.size());
  return report;
}

ReproReport reproducibility(const std::map<std::string, std::vector<std::string>>& samples) {
  std::vector<RunSet> sets;
  for (const auto& [id, runs] : samples) sets.push_back({id, runs});
  return reproducibility(sets);
}

}  // namespace hrex::eval
