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

#include "hrex/ontology.hpp"

#include <algorithm>

#include "hrex/error.hpp"
#include "hrex/hash.hpp"
#include "hrex/io.hpp"
#include "hrex/json_codec.hpp"
#include "hrex/text.hpp"

namespace hrex {

namespace {

std::string clean_label(const std::string& raw, const char* what) {
  std::string label = nfc(trim(raw));
  if (label.empty()) {
    throw Error(ErrorKind::SchemaViolation, std::string(what) + " is empty");
  }
  return label;
}

template <typename Def, typename KeyFn>
void sort_unique(std::vector<Def>& defs, KeyFn key) {
  std::sort(defs.begin(), defs.end(),
            [&](const Def& a, const Def& b) { return key(a) < key(b); });
  auto dup = std::adjacent_find(defs.begin(), defs.end(), [&](const Def& a, const Def& b) {
    return key(a) == key(b);
  });
  if (dup != defs.end()) throw Error(ErrorKind::DuplicateName, key(*dup));
}

}  // namespace

Ontology::Ontology(std::string name, std::string version, std::vector<RelationDef> relations,
                   std::vector<QualifierDef> qualifiers)
    : name_(nfc(trim(name))),
      version_(nfc(trim(version))),
      relations_(std::move(relations)),
      qualifiers_(std::move(qualifiers)) {
  if (relations_.empty()) throw Error(ErrorKind::SchemaViolation, "relations: empty");
  for (auto& r : relations_) {
    r.name = clean_label(r.name, "relation name");
    r.description = clean_label(r.description, ("description of '" + r.name + "'").c_str());
  }
  for (auto& q : qualifiers_) {
    q.key = clean_label(q.key, "qualifier key");
    q.description = clean_label(q.description, ("description of '" + q.key + "'").c_str());
  }
  sort_unique(relations_, [](const RelationDef& r) -> const std::string& { return r.name; });
  sort_unique(qualifiers_, [](const QualifierDef& q) -> const std::string& { return q.key; });
}

std::optional<RelationDef> Ontology::lookup_relation(std::string_view name) const {
  const std::string needle = nfc(trim(name));
  if (needle.empty()) return std::nullopt;
  auto it = std::lower_bound(relations_.begin(), relations_.end(), needle,
                             [](const RelationDef& r, const std::string& n) { return r.name < n; });
  if (it == relations_.end() || it->name != needle) return std::nullopt;
  return *it;
}

std::optional<QualifierDef> Ontology::lookup_qualifier(std::string_view key) const {
  const std::string needle = nfc(trim(key));
  if (needle.empty()) return std::nullopt;
  auto it = std::lower_bound(qualifiers_.begin(), qualifiers_.end(), needle,
                             [](const QualifierDef& q, const std::string& k) { return q.key < k; });
  if (it == qualifiers_.end() || it->key != needle) return std::nullopt;
  return *it;
}

std::string Ontology::to_json() const {
  json doc;
  doc["name"] = name_;
  doc["version"] = version_;
  doc["relations"] = json::array();
  for (const auto& r : relations_) {
    doc["relations"].push_back({{"name", r.name}, {"description", r.description}});
  }
  doc["qualifiers"] = json::array();
  for (const auto& q : qualifiers_) {
    doc["qualifiers"].push_back({{"key", q.key}, {"description", q.description}});
  }
  return doc.dump(2) + "\n";
}

std::string Ontology::content_hash() const { return sha256_hex(to_json()); }

Ontology parse_ontology(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("ontology: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::SchemaViolation, "ontology: expected object");

  std::string name = require_string(doc, "name", "ontology");
  std::string version = require_string(doc, "version", "ontology");
  const json& rels = require_field(doc, "relations", "ontology");
  const json& quals = require_field(doc, "qualifiers", "ontology");
  if (!rels.is_array()) throw Error(ErrorKind::SchemaViolation, "relations: expected array");
  if (!quals.is_array()) throw Error(ErrorKind::SchemaViolation, "qualifiers: expected array");

  std::vector<RelationDef> relations;
  for (size_t i = 0; i < rels.size(); ++i) {
    const std::string where = "relations[" + std::to_string(i) + "]";
    if (!rels[i].is_object()) throw Error(ErrorKind::SchemaViolation, where + ": expected object");
    relations.push_back({require_string(rels[i], "name", where),
                         require_string(rels[i], "description", where)});
  }
  std::vector<QualifierDef> qualifiers;
  for (size_t i = 0; i < quals.size(); ++i) {
    const std::string where = "qualifiers[" + std::to_string(i) + "]";
    if (!quals[i].is_object()) throw Error(ErrorKind::SchemaViolation, where + ": expected object");
    qualifiers.push_back({require_string(quals[i], "key", where),
                          require_string(quals[i], "description", where)});
  }
  return Ontology(std::move(name), std::move(version), std::move(relations),
                  std::move(qualifiers));
}

Ontology load_ontology(const std::filesystem::path& path) {
  return parse_ontology(read_file(path));
}

}  // namespace hrex
