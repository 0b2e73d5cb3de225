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

#include "hrex/fact.hpp"

#include <algorithm>

#include "hrex/error.hpp"
#include "hrex/text.hpp"

namespace hrex {

namespace {

std::string require_label(std::string_view raw, const char* what) {
  std::string label = normalize(raw);
  if (label.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " is empty");
  return label;
}

void require_mention(const EntityMention& m, const char* what) {
  if (m.normalized.empty()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " is empty");
  }
}

}  // namespace

EntityMention::EntityMention(std::string_view surface_text)
    : surface(surface_text), normalized(normalize(surface_text)) {}

HyperFact::HyperFact(EntityMention head, std::string_view relation, EntityMention tail,
                     std::vector<Qualifier> qualifiers)
    : head_(std::move(head)),
      relation_(require_label(relation, "relation")),
      tail_(std::move(tail)),
      qualifiers_(std::move(qualifiers)) {
  require_mention(head_, "head");
  require_mention(tail_, "tail");
  for (auto& q : qualifiers_) {
    q.key = require_label(q.key, "qualifier key");
    require_mention(q.value, "qualifier value");
  }
  std::sort(qualifiers_.begin(), qualifiers_.end());
  qualifiers_.erase(std::unique(qualifiers_.begin(), qualifiers_.end()), qualifiers_.end());
}

HyperFact::HyperFact(std::string_view head, std::string_view relation, std::string_view tail,
                     std::vector<std::pair<std::string, std::string>> qualifiers)
    : HyperFact(EntityMention(head), relation, EntityMention(tail), [&] {
        std::vector<Qualifier> qs;
        qs.reserve(qualifiers.size());
        for (auto& [k, v] : qualifiers) qs.push_back({k, EntityMention(v)});
        return qs;
      }()) {}

std::vector<Quintuple> expand_quintuples(const HyperFact& fact) {
  std::vector<Quintuple> out;
  if (fact.qualifiers().empty()) {
    out.push_back({fact.head().normalized, fact.relation(), fact.tail().normalized, std::nullopt});
    return out;
  }
  out.reserve(fact.qualifiers().size());
  for (const auto& q : fact.qualifiers()) {
    out.push_back({fact.head().normalized, fact.relation(), fact.tail().normalized,
                   std::make_pair(q.key, q.value.normalized)});
  }
  return out;
}

std::string escape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': case '|': case ';': case ':':
      case '(': case ')': case '[': case ']':
        out.push_back('\\');
        break;
      default:
        break;
    }
    out.push_back(c);
  }
  return out;
}

std::string serialize_fact(const HyperFact& fact) {
  std::string out = "(";
  out += escape_field(fact.head().normalized);
  out += " | ";
  out += escape_field(fact.relation());
  out += " | ";
  out += escape_field(fact.tail().normalized);
  out += ")";
  if (!fact.qualifiers().empty()) {
    out += " [";
    bool first = true;
    for (const auto& q : fact.qualifiers()) {
      if (!first) out += "; ";
      first = false;
      out += escape_field(q.key);
      out += ": ";
      out += escape_field(q.value.normalized);
    }
    out += "]";
  }
  return out;
}

}  // namespace hrex
