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
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "hrex/gateway.hpp"

namespace hrex::eval {

enum class SimilarityKind { Exact, TokenF1, TrigramCosine, HttpEmbedding };

std::string_view to_string(SimilarityKind kind);
/// Accepts exact, token_f1, trigram, trigram_cosine, http, http_embedding.
SimilarityKind similarity_kind_from_string(std::string_view name);

// Text pair -> [0, 1]. Implementations must be symmetric, give 1 for equal
// non-empty texts, and be callable from several threads at once.
class SimilarityBackend {
 public:
  virtual ~SimilarityBackend() = default;
  virtual SimilarityKind kind() const = 0;
  virtual double score(std::string_view a, std::string_view b) const = 0;
};

/// Cosine of character-trigram count vectors over "##text##". 0 when either
/// text is empty.
double trigram_cosine(std::string_view a, std::string_view b);

/// Multiset F1 of whitespace tokens. 1 when both are empty, 0 when one is.
double token_f1(std::string_view a, std::string_view b);

using TokenEmbeddings = std::vector<std::vector<double>>;

/// Greedy max-cosine matching F1 between two token embedding sequences, as
/// BERTScore defines it, clamped to [0, 1]. 0 when either side is empty.
double bertscore_f1(const TokenEmbeddings& candidate, const TokenEmbeddings& reference);

class ExactSimilarity final : public SimilarityBackend {
 public:
  SimilarityKind kind() const override { return SimilarityKind::Exact; }
  double score(std::string_view a, std::string_view b) const override { return a == b ? 1.0 : 0.0; }
};

class TokenF1Similarity final : public SimilarityBackend {
 public:
  SimilarityKind kind() const override { return SimilarityKind::TokenF1; }
  double score(std::string_view a, std::string_view b) const override { return token_f1(a, b); }
};

class TrigramCosineSimilarity final : public SimilarityBackend {
 public:
  SimilarityKind kind() const override { return SimilarityKind::TrigramCosine; }
  double score(std::string_view a, std::string_view b) const override {
    return trigram_cosine(a, b);
  }
};

// Fetches per-token embeddings from a service and scores with bertscore_f1.
// Wire format: POST <base>/embed {"model", "input"} -> {"embeddings": [[...]]}.
class HttpEmbeddingSimilarity final : public SimilarityBackend {
 public:
  HttpEmbeddingSimilarity(std::string base_url, std::string model, std::string api_key = {},
                          size_t max_in_flight = 4,
                          std::chrono::milliseconds timeout = std::chrono::seconds(60));
  /// HREX_EMBED_BASE (required), HREX_EMBED_MODEL, HREX_API_KEY.
  static std::unique_ptr<HttpEmbeddingSimilarity> from_env();

  SimilarityKind kind() const override { return SimilarityKind::HttpEmbedding; }
  double score(std::string_view a, std::string_view b) const override;

  size_t requests() const;

 private:
  TokenEmbeddings embed(std::string_view text) const;

  std::string base_url_;
  std::string model_;
  std::string api_key_;
  std::chrono::milliseconds timeout_;
  mutable InFlightLimiter limiter_;
  mutable std::mutex mu_;
  mutable std::map<std::string, TokenEmbeddings, std::less<>> cache_;
  mutable size_t requests_ = 0;
};

std::unique_ptr<SimilarityBackend> make_similarity(SimilarityKind kind);

}  // namespace hrex::eval
