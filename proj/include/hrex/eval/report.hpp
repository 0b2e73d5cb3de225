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

#include <string>
#include <string_view>
#include <vector>

#include "hrex/eval/metrics.hpp"
#include "hrex/json_codec.hpp"

namespace hrex::eval {

struct SampleScore {
  std::string id;
  PRF prf;
};

// Scores of one predictions file against gold under one metric setting.
struct EvalReport {
  std::string metric;  // "exact" or "soft"
  std::string label;   // model or run name shown in tables
  json params = json::object();
  std::vector<SampleScore> per_sample;
  PRF micro;
  PRF macro;
  json provenance;  // run manifest config, or null

  std::string to_json() const;
  static EvalReport from_json(std::string_view text, const std::string& where);
  /// One row per sample, then "__micro__" and "__macro__" rows.
  std::string to_csv() const;
};

json prf_to_json(const PRF& prf);
PRF prf_from_json(const json& j, const std::string& where);

std::string repro_report_to_json(const ReproReport& report, const std::string& label,
                                 const json& provenance);
ReproReport repro_report_from_json(std::string_view text, const std::string& where,
                                   std::string* label = nullptr, json* provenance = nullptr);

}  // namespace hrex::eval
