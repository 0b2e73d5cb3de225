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
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hrex/dataset.hpp"
#include "hrex/eval/alignment.hpp"
#include "hrex/eval/metrics.hpp"
#include "hrex/eval/report.hpp"
#include "hrex/eval/similarity.hpp"
#include "hrex/gateway.hpp"

namespace hrex::cli {

// Exit codes: 0 clean, 1 some samples failed, 2 fatal configuration or I/O.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSampleErrors = 1;
inline constexpr int kExitFatal = 2;

ConversionStats cmd_convert(const std::filesystem::path& in, const std::filesystem::path& out,
                            const std::optional<std::filesystem::path>& mapping);

struct ExtractConfig {
  std::filesystem::path dataset;
  std::filesystem::path ontology;
  std::filesystem::path exemplar;
  BackendKind backend = BackendKind::Mock;
  std::optional<std::filesystem::path> fixtures;  // replay backend
  std::string mock_text;                          // mock backend
  CompletionParams params;
  size_t runs = 1;
  std::optional<std::filesystem::path> cache;
  std::filesystem::path out;
  std::optional<std::filesystem::path> manifest;  // default: <out>.manifest.json
  size_t jobs = 1;
  size_t max_in_flight = 4;
  bool strict = false;
  std::optional<size_t> subset;
  uint64_t seed = 0;
  bool record_timing = false;
  // Used instead of constructing a backend from `backend` when set.
  std::shared_ptr<CompletionBackend> backend_override;
};

struct ExtractSummary {
  size_t samples = 0;
  size_t errors = 0;
  int exit_code = kExitOk;
};

/// Writes one ExtractionRecord per sample in dataset order, then the
/// manifest. Per-sample failures are recorded, not thrown.
ExtractSummary cmd_extract(const ExtractConfig& config, std::ostream& log);

enum class Granularity { Fact, Blob };

struct EvalConfig {
  std::filesystem::path gold;
  std::filesystem::path pred;
  std::string metric = "exact";
  eval::SimilarityKind sim = eval::SimilarityKind::Exact;
  bool ignore_case = false;
  eval::Alignment alignment = eval::Alignment::Greedy;
  Granularity granularity = Granularity::Fact;
  size_t score_run = 0;
  std::string label;  // default: model from the records, else the file stem
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> csv;
  std::shared_ptr<eval::SimilarityBackend> sim_override;
};

/// Throws MetricUnknown, IdMismatch, DuplicateId or SchemaViolation. Prints
/// a Model/Precision/Recall/F1 table to `console`.
eval::EvalReport cmd_eval(const EvalConfig& config, std::ostream& console);

/// Errored records are left out. Throws TooFewRuns when records carry a
/// single run.
eval::ReproReport cmd_repro(const std::filesystem::path& records,
                            const std::optional<std::filesystem::path>& out, std::ostream& console);

/// Markdown with one table per metric family and a provenance section.
/// Throws EmptyInput without reports.
std::string cmd_report(const std::vector<std::filesystem::path>& reports,
                       const std::optional<std::filesystem::path>& out);

struct FixturesConfig {
  std::filesystem::path responses;  // JSONL {"id", "runs": [text, ...]}
  std::filesystem::path dataset;
  std::filesystem::path ontology;
  std::filesystem::path exemplar;
  CompletionParams params;
  std::filesystem::path out;
  std::string recorded_at;
};

/// Writes replay fixtures keyed exactly as extraction will look them up.
/// Returns the number of files written.
size_t cmd_fixtures(const FixturesConfig& config);

}  // namespace hrex::cli
