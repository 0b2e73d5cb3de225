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

#include "hrex/eval/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "hrex/error.hpp"
#include "hrex/http.hpp"
#include "hrex/json_codec.hpp"
#include "hrex/text.hpp"

namespace hrex::eval {

std::string_view to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::Exact: return "exact";
    case SimilarityKind::TokenF1: return "token_f1";
    case SimilarityKind::TrigramCosine: return "trigram_cosine";
    case SimilarityKind::HttpEmbedding: return "http_embedding";
  }
  return "unknown";
}

SimilarityKind similarity_kind_from_string(std::string_view name) {
  if (name == "exact") return SimilarityKind::Exact;
  if (name == "token_f1") return SimilarityKind::TokenF1;
  if (name == "trigram" || name == "trigram_cosine") return SimilarityKind::TrigramCosine;
  if (name == "http" || name == "http_embedding") return SimilarityKind::HttpEmbedding;
  throw Error(ErrorKind::InvalidArgument, "unknown similarity backend: " + std::string(name));
}

namespace {

// Trigrams packed as three 21-bit code points in one integer, sorted so two
// profiles can be compared by a linear merge.
std::vector<uint64_t> trigram_profile(std::string_view text) {
  std::vector<uint64_t> grams;
  if (text.empty()) return grams;
  std::u32string padded = U"##";
  padded += to_code_points(text);
  padded += U"##";
  grams.reserve(padded.size() - 2);
  for (size_t i = 0; i + 3 <= padded.size(); ++i) {
    grams.push_back((uint64_t{padded[i]} << 42) | (uint64_t{padded[i + 1]} << 21) |
                    uint64_t{padded[i + 2]});
  }
  std::sort(grams.begin(), grams.end());
  return grams;
}

// Sum of squared run lengths.
long long self_dot(const std::vector<uint64_t>& g) {
  long long total = 0;
  for (size_t i = 0; i < g.size();) {
    size_t j = i;
    while (j < g.size() && g[j] == g[i]) ++j;
    const long long n = static_cast<long long>(j - i);
    total += n * n;
    i = j;
  }
  return total;
}

}  // namespace

double trigram_cosine(std::string_view a, std::string_view b) {
  const auto ga = trigram_profile(a);
  const auto gb = trigram_profile(b);
  if (ga.empty() || gb.empty()) return 0.0;
  long long dot = 0;
  size_t i = 0, j = 0;
  while (i < ga.size() && j < gb.size()) {
    if (ga[i] < gb[j]) {
      ++i;
    } else if (gb[j] < ga[i]) {
      ++j;
    } else {
      const uint64_t g = ga[i];
      long long na = 0, nb = 0;
      while (i < ga.size() && ga[i] == g) ++i, ++na;
      while (j < gb.size() && gb[j] == g) ++j, ++nb;
      dot += na * nb;
    }
  }
  const double denom = std::sqrt(static_cast<double>(self_dot(ga)) * static_cast<double>(self_dot(gb)));
  return std::clamp(static_cast<double>(dot) / denom, 0.0, 1.0);
}

double token_f1(std::string_view a, std::string_view b) {
  auto tokens = [](std::string_view text) {
    std::map<std::string, long> out;
    const std::string norm = normalize(text);
    size_t start = 0;
    while (start < norm.size()) {
      size_t end = norm.find(' ', start);
      if (end == std::string::npos) end = norm.size();
      if (end > start) ++out[norm.substr(start, end - start)];
      start = end + 1;
    }
    return out;
  };
  const auto ta = tokens(a);
  const auto tb = tokens(b);
  long na = 0, nb = 0, overlap = 0;
  for (const auto& [t, n] : ta) {
    na += n;
    if (auto it = tb.find(t); it != tb.end()) overlap += std::min(n, it->second);
  }
  for (const auto& [t, n] : tb) nb += n;
  if (na == 0 && nb == 0) return 1.0;
  if (na == 0 || nb == 0) return 0.0;
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(na + nb);
}

namespace {

std::vector<std::vector<double>> unit_rows(const TokenEmbeddings& rows) {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    double norm = 0.0;
    for (double v : r) norm += v * v;
    norm = std::sqrt(norm);
    std::vector<double> u(r.size());
    for (size_t k = 0; k < r.size(); ++k) u[k] = norm > 0 ? r[k] / norm : 0.0;
    out.push_back(std::move(u));
  }
  return out;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::BackendFailure, "embedding dimensions differ");
  }
  double s = 0.0;
  for (size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

}  // namespace

double bertscore_f1(const TokenEmbeddings& candidate, const TokenEmbeddings& reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const auto c = unit_rows(candidate);
  const auto r = unit_rows(reference);
  std::vector<double> best_c(c.size(), -1.0), best_r(r.size(), -1.0);
  for (size_t i = 0; i < c.size(); ++i) {
    for (size_t j = 0; j < r.size(); ++j) {
      const double s = dot(c[i], r[j]);
      best_c[i] = std::max(best_c[i], s);
      best_r[j] = std::max(best_r[j], s);
    }
  }
  double p = 0.0, rec = 0.0;
  for (double v : best_c) p += v;
  for (double v : best_r) rec += v;
  p /= static_cast<double>(c.size());
  rec /= static_cast<double>(r.size());
  if (p + rec <= 0.0) return 0.0;
  return std::clamp(2.0 * p * rec / (p + rec), 0.0, 1.0);
}

HttpEmbeddingSimilarity::HttpEmbeddingSimilarity(std::string base_url, std::string model,
                                                 std::string api_key, size_t max_in_flight,
                                                 std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)),
      model_(std::move(model)),
      api_key_(std::move(api_key)),
      timeout_(timeout),
      limiter_(max_in_flight) {
  if (base_url_.empty()) throw Error(ErrorKind::InvalidArgument, "HREX_EMBED_BASE is not set");
}

std::unique_ptr<HttpEmbeddingSimilarity> HttpEmbeddingSimilarity::from_env() {
  auto env = [](const char* name) {
    const char* v = std::getenv(name);
    return std::string(v != nullptr ? v : "");
  };
  std::string model = env("HREX_EMBED_MODEL");
  return std::make_unique<HttpEmbeddingSimilarity>(env("HREX_EMBED_BASE"),
                                                   model.empty() ? "roberta-large" : model,
                                                   env("HREX_API_KEY"));
}

size_t HttpEmbeddingSimilarity::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

TokenEmbeddings HttpEmbeddingSimilarity::embed(std::string_view text) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(text); it != cache_.end()) return it->second;
  }
  std::map<std::string, std::string> headers;
  if (!api_key_.empty()) headers["Authorization"] = "Bearer " + api_key_;
  const json body = {{"model", model_}, {"input", std::string(text)}};

  limiter_.acquire();
  HttpReply reply;
  try {
    reply = post_json(base_url_, "/embed", headers, body.dump(), timeout_);
  } catch (...) {
    limiter_.release();
    throw;
  }
  limiter_.release();

  if (reply.status == 401 || reply.status == 403) throw Error(ErrorKind::AuthMissing, "embedding service");
  if (reply.status != 200) {
    throw Error(ErrorKind::BackendFailure, "embedding service status " + std::to_string(reply.status));
  }
  TokenEmbeddings vectors;
  try {
    const json doc = json::parse(reply.body);
    for (const auto& row : doc.at("embeddings")) vectors.push_back(row.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BackendFailure, std::string("malformed embedding reply: ") + e.what());
  }
  std::lock_guard lock(mu_);
  ++requests_;
  cache_.emplace(std::string(text), vectors);
  return vectors;
}

double HttpEmbeddingSimilarity::score(std::string_view a, std::string_view b) const {
  if (a == b && !a.empty()) return 1.0;
  // Order the pair so that score(a, b) and score(b, a) run the same arithmetic.
  if (b < a) std::swap(a, b);
  return bertscore_f1(embed(a), embed(b));
}

std::unique_ptr<SimilarityBackend> make_similarity(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::Exact: return std::make_unique<ExactSimilarity>();
    case SimilarityKind::TokenF1: return std::make_unique<TokenF1Similarity>();
    case SimilarityKind::TrigramCosine: return std::make_unique<TrigramCosineSimilarity>();
    case SimilarityKind::HttpEmbedding: return HttpEmbeddingSimilarity::from_env();
  }
  throw Error(ErrorKind::InvalidArgument, "unknown similarity kind");
}

}  // namespace hrex::eval
