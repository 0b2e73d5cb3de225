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

#include "hrex/json_codec.hpp"

#include "hrex/error.hpp"

namespace hrex {

const json& require_field(const json& obj, const char* field, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorKind::SchemaViolation, where + ": expected object");
  auto it = obj.find(field);
  if (it == obj.end()) {
    throw Error(ErrorKind::SchemaViolation, where + ": missing field '" + field + "'");
  }
  return *it;
}

std::string require_string(const json& obj, const char* field, const std::string& where) {
  const json& v = require_field(obj, field, where);
  if (!v.is_string()) {
    throw Error(ErrorKind::SchemaViolation, where + "." + field + ": expected string");
  }
  return v.get<std::string>();
}

json fact_to_json(const HyperFact& fact) {
  json quals = json::array();
  for (const auto& q : fact.qualifiers()) {
    quals.push_back({{"key", q.key}, {"value", q.value.normalized}});
  }
  return {{"head", fact.head().normalized},
          {"relation", fact.relation()},
          {"tail", fact.tail().normalized},
          {"qualifiers", std::move(quals)}};
}

HyperFact fact_from_json(const json& j, const std::string& where) {
  std::string head = require_string(j, "head", where);
  std::string relation = require_string(j, "relation", where);
  std::string tail = require_string(j, "tail", where);
  std::vector<std::pair<std::string, std::string>> quals;
  if (auto it = j.find("qualifiers"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw Error(ErrorKind::SchemaViolation, where + ".qualifiers: expected array");
    for (size_t i = 0; i < it->size(); ++i) {
      const std::string qwhere = where + ".qualifiers[" + std::to_string(i) + "]";
      quals.emplace_back(require_string((*it)[i], "key", qwhere),
                         require_string((*it)[i], "value", qwhere));
    }
  }
  try {
    return HyperFact(head, relation, tail, std::move(quals));
  } catch (const Error& e) {
    throw Error(ErrorKind::SchemaViolation, where + ": " + e.detail());
  }
}

json facts_to_json(const std::vector<HyperFact>& facts) {
  json arr = json::array();
  for (const auto& f : facts) arr.push_back(fact_to_json(f));
  return arr;
}

std::vector<HyperFact> facts_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::SchemaViolation, where + ": expected array");
  std::vector<HyperFact> facts;
  facts.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    facts.push_back(fact_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return facts;
}

json diagnostic_to_json(const ParseDiagnostic& d) {
  return {{"line", d.line_number},
          {"severity", std::string(to_string(d.severity))},
          {"reason", std::string(to_string(d.reason))},
          {"excerpt", d.excerpt}};
}

ParseDiagnostic diagnostic_from_json(const json& j, const std::string& where) {
  ParseDiagnostic d;
  const json& line = require_field(j, "line", where);
  if (!line.is_number_unsigned()) throw Error(ErrorKind::SchemaViolation, where + ".line");
  d.line_number = line.get<size_t>();
  const std::string reason = require_string(j, "reason", where);
  bool found = false;
  for (auto r : {ParseReason::NotAFactLine, ParseReason::BadArity, ParseReason::EmptyField,
                 ParseReason::MalformedQualifier, ParseReason::UnknownRelation,
                 ParseReason::UnknownQualifierKey, ParseReason::DuplicateFact}) {
    if (to_string(r) == reason) {
      d.reason = r;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::SchemaViolation, where + ".reason: " + reason);
  d.severity = severity_of(d.reason);
  d.excerpt = require_string(j, "excerpt", where);
  return d;
}

}  // namespace hrex
