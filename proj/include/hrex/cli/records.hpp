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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hrex/json_codec.hpp"
#include "hrex/parser.hpp"

namespace hrex::cli {

struct RunRecord {
  size_t run_index = 0;
  std::string raw_text;
  ParseOutcome outcome;
  std::optional<long long> latency_us;  // only with --record-timing
};

// One sentence's trace through extraction. `error` is set when the sample
// failed; `runs` then holds whatever completed before the failure (usually
// nothing).
struct ExtractionRecord {
  std::string id;
  std::string text;
  std::string prompt_hash;
  std::string model;
  double temperature = 0.0;
  size_t n_runs = 0;
  std::vector<RunRecord> runs;
  std::optional<std::string> error;

  json to_json() const;
  std::string to_jsonl() const { return to_json().dump(); }
  static ExtractionRecord from_json(const json& j, const std::string& where);
};

std::vector<ExtractionRecord> load_records(const std::filesystem::path& path);

/// True when a JSONL line looks like an ExtractionRecord rather than a
/// canonical sample.
bool is_record_line(const json& j);

// Everything needed to rerun an extraction against replay fixtures. Wall
// clock times live here and nowhere else.
struct RunManifest {
  json config = json::object();
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  size_t samples = 0;
  size_t errors = 0;

  std::string to_json() const;
  static RunManifest from_json(std::string_view text, const std::string& where);
};

/// `<records>.manifest.json`.
std::filesystem::path default_manifest_path(const std::filesystem::path& records);

}  // namespace hrex::cli
