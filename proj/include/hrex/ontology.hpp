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
#include <string_view>
#include <vector>

namespace hrex {

struct RelationDef {
  std::string name;
  std::string description;

  friend bool operator==(const RelationDef&, const RelationDef&) = default;
};

struct QualifierDef {
  std::string key;
  std::string description;

  friend bool operator==(const QualifierDef&, const QualifierDef&) = default;
};

// Immutable catalog of relation and qualifier definitions. Entries are kept
// in lexicographic (byte) order of name/key so that anything rendered from
// an Ontology is deterministic.
class Ontology {
 public:
  // Validates, NFC-normalizes and sorts. Throws SchemaViolation on empty or
  // blank entries and DuplicateName on repeated names/keys.
  Ontology(std::string name, std::string version, std::vector<RelationDef> relations,
           std::vector<QualifierDef> qualifiers);

  const std::string& name() const { return name_; }
  const std::string& version() const { return version_; }
  const std::vector<RelationDef>& relations() const { return relations_; }
  const std::vector<QualifierDef>& qualifiers() const { return qualifiers_; }

  // Exact, case-sensitive match after trimming the query.
  std::optional<RelationDef> lookup_relation(std::string_view name) const;
  std::optional<QualifierDef> lookup_qualifier(std::string_view key) const;

  bool has_relation(std::string_view name) const { return lookup_relation(name).has_value(); }
  bool has_qualifier(std::string_view key) const { return lookup_qualifier(key).has_value(); }

  /// Canonical JSON text in the ontology file format.
  std::string to_json() const;
  /// SHA-256 of to_json().
  std::string content_hash() const;

  friend bool operator==(const Ontology&, const Ontology&) = default;

 private:
  std::string name_;
  std::string version_;
  std::vector<RelationDef> relations_;
  std::vector<QualifierDef> qualifiers_;
};

Ontology parse_ontology(std::string_view json_text);
Ontology load_ontology(const std::filesystem::path& path);

}  // namespace hrex
