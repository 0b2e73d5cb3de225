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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hrex/fact.hpp"

namespace hrex {

struct SentenceSample {
  std::string id;
  std::string text;
  std::vector<HyperFact> gold;

  friend bool operator==(const SentenceSample&, const SentenceSample&) = default;
};

// Key names of the raw HyperRED records. Spans are [start, end) token
// offsets unless span_end_inclusive is set. When `id` is absent from a
// record the sample id is id_prefix + record index.
struct FieldMapping {
  std::string tokens = "tokens";
  std::string entities = "entities";
  std::string relations = "relations";
  std::string head = "head";
  std::string tail = "tail";
  std::string relation_label = "label";
  std::string qualifiers = "qualifiers";
  std::string qualifier_span = "span";
  std::string qualifier_label = "label";
  std::string id = "id";
  std::string id_prefix = "hyperred-";
  bool span_end_inclusive = false;

  /// Throws SchemaViolation if any mapped key is empty.
  void validate() const;
};

/// Defaults overridden by whichever keys the JSON object sets.
FieldMapping load_field_mapping(const std::filesystem::path& path);

struct SkippedRecord {
  size_t record_index = 0;
  std::string reason;
};

struct ConversionStats {
  size_t samples_read = 0;
  size_t samples_written = 0;
  size_t facts_emitted = 0;
  std::vector<SkippedRecord> skipped;

  std::map<std::string, size_t> skipped_by_reason() const;
  std::string to_json() const;
};

/// Raw input may be a JSON array of records or JSONL. A record missing a
/// mapped key aborts with SchemaViolation; a record with an out-of-range or
/// empty span is skipped and reported as SpanOutOfRange.
ConversionStats convert_hyperred(const std::filesystem::path& raw_path, const FieldMapping& mapping,
                                 const std::filesystem::path& out_path);

std::string sample_to_jsonl(const SentenceSample& sample);

/// Canonical fact JSONL, order-preserving. Throws SchemaViolation (with the
/// 1-based line) or DuplicateId.
std::vector<SentenceSample> load_samples(const std::filesystem::path& path);
std::vector<SentenceSample> parse_samples(std::string_view jsonl, const std::string& source);

// xorshift64* seeded through one splitmix64 step. Fixed so that subsets are
// identical on every platform.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(uint64_t seed);
  uint64_t next();
  /// Uniform in [0, bound) by rejection sampling; bound must be > 0.
  uint64_t below(uint64_t bound);

 private:
  uint64_t state_;
};

/// First n positions of a seeded Fisher-Yates shuffle. Throws SubsetTooLarge.
std::vector<SentenceSample> sample_subset(const std::vector<SentenceSample>& samples, size_t n,
                                          uint64_t seed);

}  // namespace hrex
