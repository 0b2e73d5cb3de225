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

#include "hrex/cli/records.hpp"

#include "hrex/error.hpp"
#include "hrex/io.hpp"
#include "hrex/text.hpp"

namespace hrex::cli {

json ExtractionRecord::to_json() const {
  json runs_json = json::array();
  for (const auto& run : runs) {
    json diags = json::array();
    for (const auto& d : run.outcome.diagnostics) diags.push_back(diagnostic_to_json(d));
    json r = {{"run_index", run.run_index},
              {"raw_text", run.raw_text},
              {"facts", facts_to_json(run.outcome.facts)},
              {"diagnostics", std::move(diags)}};
    if (run.latency_us) r["latency_us"] = *run.latency_us;
    runs_json.push_back(std::move(r));
  }
  return {{"id", id},
          {"text", text},
          {"prompt_hash", prompt_hash},
          {"params", {{"model", model}, {"temperature", temperature}, {"n_runs", n_runs}}},
          {"runs", std::move(runs_json)},
          {"error", error ? json(*error) : json()}};
}

ExtractionRecord ExtractionRecord::from_json(const json& j, const std::string& where) {
  ExtractionRecord r;
  r.id = require_string(j, "id", where);
  r.text = require_string(j, "text", where);
  r.prompt_hash = require_string(j, "prompt_hash", where);
  const json& params = require_field(j, "params", where);
  r.model = require_string(params, "model", where + ".params");
  const json& temp = require_field(params, "temperature", where + ".params");
  const json& n = require_field(params, "n_runs", where + ".params");
  if (!temp.is_number() || !n.is_number_unsigned()) {
    throw Error(ErrorKind::SchemaViolation, where + ".params");
  }
  r.temperature = temp.get<double>();
  r.n_runs = n.get<size_t>();
  const json& runs = require_field(j, "runs", where);
  if (!runs.is_array()) throw Error(ErrorKind::SchemaViolation, where + ".runs");
  for (size_t i = 0; i < runs.size(); ++i) {
    const std::string w = where + ".runs[" + std::to_string(i) + "]";
    RunRecord run;
    const json& idx = require_field(runs[i], "run_index", w);
    if (!idx.is_number_unsigned()) throw Error(ErrorKind::SchemaViolation, w + ".run_index");
    run.run_index = idx.get<size_t>();
    run.raw_text = require_string(runs[i], "raw_text", w);
    run.outcome.facts = facts_from_json(require_field(runs[i], "facts", w), w + ".facts");
    if (auto it = runs[i].find("diagnostics"); it != runs[i].end() && it->is_array()) {
      for (size_t k = 0; k < it->size(); ++k) {
        run.outcome.diagnostics.push_back(
            diagnostic_from_json((*it)[k], w + ".diagnostics[" + std::to_string(k) + "]"));
      }
    }
    if (auto it = runs[i].find("latency_us"); it != runs[i].end() && it->is_number_integer()) {
      run.latency_us = it->get<long long>();
    }
    r.runs.push_back(std::move(run));
  }
  if (auto it = j.find("error"); it != j.end() && it->is_string()) r.error = it->get<std::string>();
  return r;
}

bool is_record_line(const json& j) {
  return j.is_object() && j.contains("runs") && j.contains("prompt_hash");
}

std::vector<ExtractionRecord> load_records(const std::filesystem::path& path) {
  std::vector<ExtractionRecord> out;
  size_t line_no = 0;
  for (const std::string& line : split_lines(read_file(path))) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
    }
    out.push_back(ExtractionRecord::from_json(doc, where));
  }
  return out;
}

std::string RunManifest::to_json() const {
  json doc = {{"tool_version", tool_version}, {"config", config},   {"samples", samples},
              {"errors", errors},             {"started_at", started_at},
              {"finished_at", finished_at}};
  return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text, const std::string& where) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
  }
  RunManifest m;
  m.config = require_field(doc, "config", where);
  m.tool_version = doc.value("tool_version", std::string());
  m.started_at = doc.value("started_at", std::string());
  m.finished_at = doc.value("finished_at", std::string());
  m.samples = doc.value("samples", size_t{0});
  m.errors = doc.value("errors", size_t{0});
  return m;
}

std::filesystem::path default_manifest_path(const std::filesystem::path& records) {
  std::filesystem::path p = records;
  p += ".manifest.json";
  return p;
}

}  // namespace hrex::cli
