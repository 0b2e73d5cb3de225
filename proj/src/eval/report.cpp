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

#include "hrex/eval/report.hpp"

#include <cstdio>

#include "hrex/error.hpp"

namespace hrex::eval {

json prf_to_json(const PRF& prf) {
  return {{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1},
          {"n_pred", prf.n_pred},       {"n_gold", prf.n_gold}, {"matched", prf.matched}};
}

PRF prf_from_json(const json& j, const std::string& where) {
  auto number = [&](const char* field) {
    const json& v = require_field(j, field, where);
    if (!v.is_number()) throw Error(ErrorKind::SchemaViolation, where + "." + field);
    return v.get<double>();
  };
  auto count = [&](const char* field) {
    const json& v = require_field(j, field, where);
    if (!v.is_number_unsigned()) throw Error(ErrorKind::SchemaViolation, where + "." + field);
    return v.get<size_t>();
  };
  PRF p;
  p.precision = number("precision");
  p.recall = number("recall");
  p.f1 = number("f1");
  p.n_pred = count("n_pred");
  p.n_gold = count("n_gold");
  p.matched = number("matched");
  return p;
}

std::string EvalReport::to_json() const {
  json per = json::array();
  for (const auto& s : per_sample) {
    json row = {{"id", s.id}};
    row.update(prf_to_json(s.prf));
    per.push_back(std::move(row));
  }
  json doc = {{"metric", metric},
              {"label", label},
              {"params", params},
              {"per_sample", std::move(per)},
              {"micro", prf_to_json(micro)},
              {"macro", prf_to_json(macro)},
              {"provenance", provenance}};
  return doc.dump(2) + "\n";
}

EvalReport EvalReport::from_json(std::string_view text, const std::string& where) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
  }
  EvalReport r;
  r.metric = require_string(doc, "metric", where);
  if (auto it = doc.find("label"); it != doc.end() && it->is_string()) r.label = *it;
  if (auto it = doc.find("params"); it != doc.end()) r.params = *it;
  if (auto it = doc.find("provenance"); it != doc.end()) r.provenance = *it;
  const json& per = require_field(doc, "per_sample", where);
  if (!per.is_array()) throw Error(ErrorKind::SchemaViolation, where + ".per_sample");
  for (size_t i = 0; i < per.size(); ++i) {
    const std::string w = where + ".per_sample[" + std::to_string(i) + "]";
    r.per_sample.push_back({require_string(per[i], "id", w), prf_from_json(per[i], w)});
  }
  r.micro = prf_from_json(require_field(doc, "micro", where), where + ".micro");
  r.macro = prf_from_json(require_field(doc, "macro", where), where + ".macro");
  return r;
}

std::string EvalReport::to_csv() const {
  std::string out = "id,precision,recall,f1,n_pred,n_gold,matched\n";
  auto row = [&](const std::string& id, const PRF& p) {
    char buf[256];
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,%zu,%zu,%.6f\n", p.precision, p.recall, p.f1,
                  p.n_pred, p.n_gold, p.matched);
    std::string quoted = id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      quoted = "\"";
      for (char c : id) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      quoted += '"';
    }
    out += quoted + buf;
  };
  for (const auto& s : per_sample) row(s.id, s.prf);
  row("__micro__", micro);
  row("__macro__", macro);
  return out;
}

std::string repro_report_to_json(const ReproReport& report, const std::string& label,
                                 const json& provenance) {
  json per = json::array();
  for (const auto& [id, score] : report.per_sample) per.push_back({{"id", id}, {"score", score}});
  json doc = {{"metric", "reproducibility"},
              {"label", label},
              {"params", {{"similarity", "normalized_levenshtein"}, {"n_runs", report.n_runs}}},
              {"corpus_score", report.corpus_score},
              {"n_runs", report.n_runs},
              {"per_sample", std::move(per)},
              {"provenance", provenance}};
  return doc.dump(2) + "\n";
}

ReproReport repro_report_from_json(std::string_view text, const std::string& where,
                                   std::string* label, json* provenance) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
  }
  ReproReport r;
  const json& score = require_field(doc, "corpus_score", where);
  const json& runs = require_field(doc, "n_runs", where);
  if (!score.is_number() || !runs.is_number_unsigned()) {
    throw Error(ErrorKind::SchemaViolation, where + ": corpus_score/n_runs");
  }
  r.corpus_score = score.get<double>();
  r.n_runs = runs.get<size_t>();
  for (const auto& row : require_field(doc, "per_sample", where)) {
    r.per_sample.emplace_back(require_string(row, "id", where), row.value("score", 0.0));
  }
  if (label != nullptr) *label = doc.value("label", std::string());
  if (provenance != nullptr) {
    auto it = doc.find("provenance");
    *provenance = it != doc.end() ? *it : json();
  }
  return r;
}

}  // namespace hrex::eval
