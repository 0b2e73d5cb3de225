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

#include "hrex/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "hrex/error.hpp"
#include "hrex/io.hpp"
#include "hrex/ontology.hpp"
#include "hrex/text.hpp"

namespace hrex {

std::string_view to_string(Severity severity) {
  return severity == Severity::Skip ? "skip" : "warn";
}

std::string_view to_string(ParseReason reason) {
  switch (reason) {
    case ParseReason::NotAFactLine: return "NotAFactLine";
    case ParseReason::BadArity: return "BadArity";
    case ParseReason::EmptyField: return "EmptyField";
    case ParseReason::MalformedQualifier: return "MalformedQualifier";
    case ParseReason::UnknownRelation: return "UnknownRelation";
    case ParseReason::UnknownQualifierKey: return "UnknownQualifierKey";
    case ParseReason::DuplicateFact: return "DuplicateFact";
  }
  return "Unknown";
}

Severity severity_of(ParseReason reason) {
  switch (reason) {
    case ParseReason::UnknownRelation:
    case ParseReason::UnknownQualifierKey:
    case ParseReason::DuplicateFact:
      return Severity::Warn;
    default:
      return Severity::Skip;
  }
}

namespace {

constexpr size_t kExcerptBytes = 200;

ParseDiagnostic diag(ParseReason reason, std::string_view excerpt) {
  std::string ex(excerpt.substr(0, kExcerptBytes));
  // Do not cut a UTF-8 sequence in half.
  while (!ex.empty() && excerpt.size() > kExcerptBytes &&
         (static_cast<unsigned char>(excerpt[ex.size()]) & 0xC0) == 0x80) {
    ex.pop_back();
  }
  return {0, severity_of(reason), reason, std::move(ex)};
}

// Position of the first unescaped occurrence of `c` at or after `from`.
size_t find_unescaped(std::string_view s, char c, size_t from = 0) {
  for (size_t i = from; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == c) return i;
  }
  return std::string_view::npos;
}

std::vector<std::string_view> split_unescaped(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (;;) {
    size_t pos = find_unescaped(s, sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out.push_back(s[i]);
  }
  return out;
}

// Normalized field text; trimming happens before unescaping so that an
// escaped delimiter at the edge of a field is kept.
std::string field_text(std::string_view raw) { return normalize(unescape(trim(raw))); }

std::string_view ascii_trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops list markers such as "-", "*", "•", "3." or "3)" in front of '('.
std::string_view strip_bullet(std::string_view s) {
  s = ascii_trim(s);
  if (s.starts_with("- ") || s.starts_with("* ")) return ascii_trim(s.substr(2));
  if (s.starts_with("•")) return ascii_trim(s.substr(3));
  size_t digits = 0;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
  if (digits > 0 && digits < s.size() && (s[digits] == '.' || s[digits] == ')')) {
    std::string_view rest = ascii_trim(s.substr(digits + 1));
    if (rest.starts_with('(')) return rest;
  }
  return s;
}

std::variant<std::vector<Qualifier>, ParseDiagnostic> parse_qualifiers(std::string_view block,
                                                                       std::string_view line) {
  std::vector<Qualifier> qualifiers;
  if (ascii_trim(block).empty()) return qualifiers;
  for (std::string_view item : split_unescaped(block, ';')) {
    if (ascii_trim(item).empty()) continue;  // tolerate "a: 1; ; b: 2" and trailing ';'
    size_t colon = find_unescaped(item, ':');
    if (colon == std::string_view::npos) return diag(ParseReason::MalformedQualifier, line);
    std::string key = field_text(item.substr(0, colon));
    std::string value = field_text(item.substr(colon + 1));
    if (key.empty() || value.empty()) return diag(ParseReason::EmptyField, line);
    Qualifier q{std::move(key), EntityMention()};
    q.value.surface = unescape(trim(item.substr(colon + 1)));
    q.value.normalized = std::move(value);
    qualifiers.push_back(std::move(q));
  }
  return qualifiers;
}

}  // namespace

std::variant<HyperFact, ParseDiagnostic> parse_fact_line(std::string_view line) {
  std::string_view body = strip_bullet(line);
  if (!body.starts_with('(')) return diag(ParseReason::NotAFactLine, line);

  size_t close = find_unescaped(body, ')', 1);
  if (close == std::string_view::npos) return diag(ParseReason::NotAFactLine, line);

  std::vector<std::string_view> fields = split_unescaped(body.substr(1, close - 1), '|');
  if (fields.size() != 3) return diag(ParseReason::BadArity, line);

  std::string_view rest = ascii_trim(body.substr(close + 1));
  if (!rest.empty() && (rest.back() == '.' || rest.back() == ',')) {
    rest = ascii_trim(rest.substr(0, rest.size() - 1));
  }

  std::vector<Qualifier> qualifiers;
  if (!rest.empty()) {
    if (rest.front() != '[') return diag(ParseReason::NotAFactLine, line);
    size_t end = find_unescaped(rest, ']', 1);
    if (end == std::string_view::npos || !ascii_trim(rest.substr(end + 1)).empty()) {
      return diag(ParseReason::MalformedQualifier, line);
    }
    auto parsed = parse_qualifiers(rest.substr(1, end - 1), line);
    if (auto* d = std::get_if<ParseDiagnostic>(&parsed)) return *d;
    qualifiers = std::move(std::get<std::vector<Qualifier>>(parsed));
  }

  EntityMention head(unescape(trim(fields[0])));
  std::string relation = field_text(fields[1]);
  EntityMention tail(unescape(trim(fields[2])));
  if (head.normalized.empty() || relation.empty() || tail.normalized.empty()) {
    return diag(ParseReason::EmptyField, line);
  }
  return HyperFact(std::move(head), relation, std::move(tail), std::move(qualifiers));
}

ParseOutcome parse_completion(std::string_view raw, const Ontology& ont, bool strict) {
  ParseOutcome outcome;
  std::set<HyperFact> seen;
  const std::vector<std::string> lines = split_lines(raw);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t line_number = i + 1;
    const std::string& line = lines[i];
    if (ascii_trim(line).empty()) continue;

    auto parsed = parse_fact_line(line);
    if (auto* d = std::get_if<ParseDiagnostic>(&parsed)) {
      d->line_number = line_number;
      outcome.diagnostics.push_back(std::move(*d));
      continue;
    }
    HyperFact fact = std::move(std::get<HyperFact>(parsed));

    bool known = true;
    if (!ont.has_relation(fact.relation())) {
      known = false;
      auto d = diag(ParseReason::UnknownRelation, line);
      d.line_number = line_number;
      outcome.diagnostics.push_back(std::move(d));
    }
    for (const auto& q : fact.qualifiers()) {
      if (!ont.has_qualifier(q.key)) {
        known = false;
        auto d = diag(ParseReason::UnknownQualifierKey, line);
        d.line_number = line_number;
        outcome.diagnostics.push_back(std::move(d));
      }
    }
    if (strict && !known) continue;

    if (!seen.insert(fact).second) {
      auto d = diag(ParseReason::DuplicateFact, line);
      d.line_number = line_number;
      outcome.diagnostics.push_back(std::move(d));
      continue;
    }
    outcome.facts.push_back(std::move(fact));
  }
  return outcome;
}

}  // namespace hrex
