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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hrex {

// A span of text as written, plus its normalized form. Equality and ordering
// look only at the normalized form.
struct EntityMention {
  std::string surface;
  std::string normalized;

  EntityMention() = default;
  explicit EntityMention(std::string_view surface_text);

  friend bool operator==(const EntityMention& a, const EntityMention& b) {
    return a.normalized == b.normalized;
  }
  friend auto operator<=>(const EntityMention& a, const EntityMention& b) {
    return a.normalized <=> b.normalized;
  }
};

struct Qualifier {
  std::string key;
  EntityMention value;

  friend bool operator==(const Qualifier&, const Qualifier&) = default;
  friend auto operator<=>(const Qualifier&, const Qualifier&) = default;
};

// (head, relation, tail) plus qualifiers. Construction normalizes the
// relation and qualifier keys, sorts qualifiers by (key, value) and drops
// duplicates. Throws InvalidArgument when head, relation, tail, a key or a
// value is empty after normalization.
class HyperFact {
 public:
  HyperFact(EntityMention head, std::string_view relation, EntityMention tail,
            std::vector<Qualifier> qualifiers = {});
  HyperFact(std::string_view head, std::string_view relation, std::string_view tail,
            std::vector<std::pair<std::string, std::string>> qualifiers = {});

  const EntityMention& head() const { return head_; }
  const std::string& relation() const { return relation_; }
  const EntityMention& tail() const { return tail_; }
  const std::vector<Qualifier>& qualifiers() const { return qualifiers_; }

  friend bool operator==(const HyperFact&, const HyperFact&) = default;
  friend auto operator<=>(const HyperFact&, const HyperFact&) = default;

 private:
  EntityMention head_;
  std::string relation_;
  EntityMention tail_;
  std::vector<Qualifier> qualifiers_;
};

// Exact-match scoring unit. An absent qualifier is the sentinel used for
// facts that carry no qualifiers; key and value are therefore present or
// absent together.
struct Quintuple {
  std::string head;
  std::string relation;
  std::string tail;
  std::optional<std::pair<std::string, std::string>> qualifier;

  friend bool operator==(const Quintuple&, const Quintuple&) = default;
  friend auto operator<=>(const Quintuple&, const Quintuple&) = default;
};

std::vector<Quintuple> expand_quintuples(const HyperFact& fact);

/// Backslash-escapes \ | ; : ( ) [ ] so that text survives the line grammar.
std::string escape_field(std::string_view text);

/// `(head | relation | tail) [k1: v1; k2: v2]`, qualifier block omitted when
/// there are no qualifiers.
std::string serialize_fact(const HyperFact& fact);

}  // namespace hrex
