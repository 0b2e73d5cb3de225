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
#include <vector>

#include <nlohmann/json.hpp>

#include "hrex/fact.hpp"
#include "hrex/parser.hpp"

namespace hrex {

using json = nlohmann::ordered_json;

// {"head", "relation", "tail", "qualifiers": [{"key", "value"}]}, written
// with normalized text.
json fact_to_json(const HyperFact& fact);

// Throws SchemaViolation naming `where` on missing or mistyped fields and on
// fields that normalize to empty text.
HyperFact fact_from_json(const json& j, const std::string& where);

json facts_to_json(const std::vector<HyperFact>& facts);
std::vector<HyperFact> facts_from_json(const json& j, const std::string& where);

json diagnostic_to_json(const ParseDiagnostic& d);
ParseDiagnostic diagnostic_from_json(const json& j, const std::string& where);

// Field access helpers shared by the file readers.
const json& require_field(const json& obj, const char* field, const std::string& where);
std::string require_string(const json& obj, const char* field, const std::string& where);

}  // namespace hrex
