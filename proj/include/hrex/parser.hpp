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
#include <variant>
#include <vector>

#include "hrex/fact.hpp"

namespace hrex {

class Ontology;

enum class Severity { Skip, Warn };

enum class ParseReason {
  NotAFactLine,
  BadArity,
  EmptyField,
  MalformedQualifier,
  UnknownRelation,
  UnknownQualifierKey,
  DuplicateFact,
};

std::string_view to_string(Severity severity);
std::string_view to_string(ParseReason reason);

/// Structural reasons are skip-level; ontology and duplicate reasons warn.
Severity severity_of(ParseReason reason);

struct ParseDiagnostic {
  size_t line_number = 0;  // 1-based; 0 when parsing a single detached line
  Severity severity = Severity::Skip;
  ParseReason reason = ParseReason::NotAFactLine;
  std::string excerpt;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

struct ParseOutcome {
  std::vector<HyperFact> facts;
  std::vector<ParseDiagnostic> diagnostics;
};

// Line grammar:
//   line      := [bullet] '(' field '|' field '|' field ')' [ '[' qualifier (';' qualifier)* ']' ]
//   qualifier := key ':' value          (split on the first unescaped ':')
// A backslash escapes the next byte. Whitespace around fields is ignored.
std::variant<HyperFact, ParseDiagnostic> parse_fact_line(std::string_view line);

/// Never throws on content. In strict mode facts with a relation or
/// qualifier key outside `ont` are dropped; lenient mode keeps them. Either
/// way a warn diagnostic is recorded.
ParseOutcome parse_completion(std::string_view raw, const Ontology& ont, bool strict);

}  // namespace hrex
