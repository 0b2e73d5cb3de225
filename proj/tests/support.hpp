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

// Independent oracles and random generators shared by the unit and
// acceptance tests. Nothing here calls into the code under test except to
// build values.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hrex/fact.hpp"

namespace hrex::test {

inline std::filesystem::path data_dir() { return HREX_DATA_DIR; }

// Edit distance by plain top-down recursion over suffixes. Memoised on
// (i, j) so lengths up to 8 finish quickly; every branch of the
// insert/delete/substitute tree is still considered.
inline size_t levenshtein_oracle(const std::u32string& a, const std::u32string& b) {
  std::map<std::pair<size_t, size_t>, size_t> memo;
  std::function<size_t(size_t, size_t)> go = [&](size_t i, size_t j) -> size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    size_t best = go(i + 1, j) + 1;
    best = std::min(best, go(i, j + 1) + 1);
    best = std::min(best, go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1));
    memo[key] = best;
    return best;
  };
  return go(0, 0);
}

inline std::u32string random_u32(std::mt19937_64& rng, size_t max_len, size_t alphabet) {
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<size_t> sym(0, alphabet - 1);
  std::u32string s(len(rng), U'a');
  for (auto& c : s) c = static_cast<char32_t>(U'a' + sym(rng));
  return s;
}

inline std::string ascii(const std::u32string& s) { return std::string(s.begin(), s.end()); }

// Characters chosen to exercise escaping, Unicode and whitespace handling.
inline const std::vector<std::string>& surface_alphabet() {
  static const std::vector<std::string> chars = {
      "a", "b", "Z", "7", " ", "|", ";", ":", "(", ")", "[", "]", "\\", ".", ",", "-",
      "\xC3\xA9",      // e acute
      "\xC3\x9F",      // sharp s
      "\xE4\xB8\xAD",  // CJK
      "'", "\"", "/"};
  return chars;
}

inline std::string random_surface(std::mt19937_64& rng, size_t max_len = 10) {
  const auto& alpha = surface_alphabet();
  std::uniform_int_distribution<size_t> len(1, max_len);
  std::uniform_int_distribution<size_t> pick(0, alpha.size() - 1);
  for (;;) {
    std::string s;
    const size_t n = len(rng);
    for (size_t i = 0; i < n; ++i) s += alpha[pick(rng)];
    if (s.find_first_not_of(' ') != std::string::npos) return s;
  }
}

inline HyperFact random_fact(std::mt19937_64& rng, size_t max_qualifiers = 3) {
  std::uniform_int_distribution<size_t> nq(0, max_qualifiers);
  std::vector<std::pair<std::string, std::string>> qs;
  const size_t n = nq(rng);
  for (size_t i = 0; i < n; ++i) qs.emplace_back(random_surface(rng, 6), random_surface(rng));
  return HyperFact(random_surface(rng), random_surface(rng, 8), random_surface(rng), qs);
}

// Small vocabularies so that random gold and prediction sets overlap often.
inline HyperFact random_small_fact(std::mt19937_64& rng, size_t max_qualifiers = 3) {
  static const std::vector<std::string> ents = {"Obama", "Harvard", "Hawaii", "Chicago"};
  static const std::vector<std::string> rels = {"educated at", "born in", "member of"};
  static const std::vector<std::string> keys = {"end time", "start time", "point in time"};
  static const std::vector<std::string> vals = {"1991", "1988", "2008"};
  auto pick = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
  };
  std::vector<std::pair<std::string, std::string>> qs;
  const size_t n = std::uniform_int_distribution<size_t>(0, max_qualifiers)(rng);
  for (size_t i = 0; i < n; ++i) qs.emplace_back(pick(keys), pick(vals));
  return HyperFact(pick(ents), pick(rels), pick(ents), qs);
}

inline std::vector<HyperFact> random_fact_set(std::mt19937_64& rng, size_t max_facts = 5) {
  std::vector<HyperFact> out;
  const size_t n = std::uniform_int_distribution<size_t>(0, max_facts)(rng);
  for (size_t i = 0; i < n; ++i) out.push_back(random_small_fact(rng));
  return out;
}

// A prediction set built from gold: some facts kept, some with a
// qualifier dropped or swapped, some dropped, plus a few random extras.
inline std::vector<HyperFact> perturbed(std::mt19937_64& rng, const std::vector<HyperFact>& gold) {
  std::vector<HyperFact> out;
  std::uniform_int_distribution<int> action(0, 4);
  for (const auto& f : gold) {
    switch (action(rng)) {
      case 0:
        break;  // dropped
      case 1: {
        std::vector<Qualifier> qs = f.qualifiers();
        if (!qs.empty()) qs.pop_back();
        out.emplace_back(f.head(), f.relation(), f.tail(), qs);
        break;
      }
      case 2: {
        std::vector<Qualifier> qs = f.qualifiers();
        qs.push_back({"point in time", EntityMention("2008")});
        out.emplace_back(f.head(), f.relation(), f.tail(), qs);
        break;
      }
      default:
        out.push_back(f);
    }
  }
  const size_t extras = std::uniform_int_distribution<size_t>(0, 2)(rng);
  for (size_t i = 0; i < extras; ++i) out.push_back(random_small_fact(rng));
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

// Precision, recall and F1 from raw counts with the both-empty and
// one-empty conventions, written out longhand.
struct OraclePRF {
  double p, r, f;
};

inline OraclePRF oracle_prf(size_t hit, size_t n_pred, size_t n_gold) {
  if (n_pred == 0 && n_gold == 0) return {1.0, 1.0, 1.0};
  if (n_pred == 0 || n_gold == 0) return {0.0, 0.0, 0.0};
  const double p = static_cast<double>(hit) / static_cast<double>(n_pred);
  const double r = static_cast<double>(hit) / static_cast<double>(n_gold);
  const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  return {p, r, f};
}

using Quint = std::tuple<std::string, std::string, std::string, bool, std::string, std::string>;

inline std::vector<Quint> oracle_quintuples(const std::vector<HyperFact>& facts) {
  std::vector<Quint> out;
  for (const auto& f : facts) {
    if (f.qualifiers().empty()) {
      out.emplace_back(f.head().normalized, f.relation(), f.tail().normalized, false, "", "");
    }
    for (const auto& q : f.qualifiers()) {
      out.emplace_back(f.head().normalized, f.relation(), f.tail().normalized, true, q.key,
                       q.value.normalized);
    }
  }
  std::vector<Quint> uniq;
  for (auto& q : out) {
    if (std::find(uniq.begin(), uniq.end(), q) == uniq.end()) uniq.push_back(q);
  }
  return uniq;
}

inline OraclePRF oracle_exact(const std::vector<HyperFact>& gold,
                              const std::vector<HyperFact>& pred) {
  const auto g = oracle_quintuples(gold);
  const auto p = oracle_quintuples(pred);
  size_t hit = 0;
  for (const auto& q : p) {
    for (const auto& h : g) {
      if (q == h) {
        ++hit;
        break;
      }
    }
  }
  return oracle_prf(hit, p.size(), g.size());
}

// Fact-level set comparison over canonical lines.
inline OraclePRF oracle_fact_set(const std::vector<HyperFact>& gold,
                                 const std::vector<HyperFact>& pred) {
  std::set<std::string> g, p;
  for (const auto& f : gold) g.insert(serialize_fact(f));
  for (const auto& f : pred) p.insert(serialize_fact(f));
  size_t hit = 0;
  for (const auto& s : p) hit += g.count(s);
  return oracle_prf(hit, p.size(), g.size());
}

// Best total similarity over every one-to-one assignment.
inline double brute_force_best_assignment(const std::vector<std::vector<double>>& sim) {
  const size_t rows = sim.size();
  const size_t cols = rows == 0 ? 0 : sim[0].size();
  const size_t n = std::max(rows, cols);
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  double best = 0.0;
  do {
    double total = 0.0;
    for (size_t r = 0; r < rows; ++r) {
      if (perm[r] < cols) total += sim[r][perm[r]];
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path = std::filesystem::temp_directory_path() / ("hrex-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

}  // namespace hrex::test
