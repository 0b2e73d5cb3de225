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

#include "hrex/dataset.hpp"

#include <numeric>
#include <optional>
#include <set>

#include "hrex/error.hpp"
#include "hrex/io.hpp"
#include "hrex/json_codec.hpp"
#include "hrex/text.hpp"

namespace hrex {

void FieldMapping::validate() const {
  const std::pair<const char*, const std::string*> keys[] = {
      {"tokens", &tokens},           {"entities", &entities},
      {"relations", &relations},     {"head", &head},
      {"tail", &tail},               {"relation_label", &relation_label},
      {"qualifiers", &qualifiers},   {"qualifier_span", &qualifier_span},
      {"qualifier_label", &qualifier_label}, {"id", &id}};
  for (const auto& [name, value] : keys) {
    if (trim(*value).empty()) throw Error(ErrorKind::SchemaViolation, std::string("mapping.") + name);
  }
}

FieldMapping load_field_mapping(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::SchemaViolation, path.string() + ": expected object");
  FieldMapping m;
  auto set = [&](const char* key, std::string& target) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!it->is_string()) throw Error(ErrorKind::SchemaViolation, std::string("mapping.") + key);
      target = it->get<std::string>();
    }
  };
  set("tokens", m.tokens);
  set("entities", m.entities);
  set("relations", m.relations);
  set("head", m.head);
  set("tail", m.tail);
  set("relation_label", m.relation_label);
  set("qualifiers", m.qualifiers);
  set("qualifier_span", m.qualifier_span);
  set("qualifier_label", m.qualifier_label);
  set("id", m.id);
  set("id_prefix", m.id_prefix);
  if (auto it = doc.find("span_end_inclusive"); it != doc.end()) {
    if (!it->is_boolean()) throw Error(ErrorKind::SchemaViolation, "mapping.span_end_inclusive");
    m.span_end_inclusive = it->get<bool>();
  }
  m.validate();
  return m;
}

std::map<std::string, size_t> ConversionStats::skipped_by_reason() const {
  std::map<std::string, size_t> counts;
  for (const auto& s : skipped) ++counts[s.reason];
  return counts;
}

std::string ConversionStats::to_json() const {
  json skipped_list = json::array();
  for (const auto& s : skipped) {
    skipped_list.push_back({{"record_index", s.record_index}, {"reason", s.reason}});
  }
  json by_reason = json::object();
  for (const auto& [reason, count] : skipped_by_reason()) by_reason[reason] = count;
  json doc = {{"samples_read", samples_read},
              {"samples_written", samples_written},
              {"facts_emitted", facts_emitted},
              {"records_skipped", skipped.size()},
              {"skipped_by_reason", std::move(by_reason)},
              {"skipped", std::move(skipped_list)}};
  return doc.dump(2);
}

namespace {

// Thrown inside one record to mark it skipped.
struct SkipRecord {
  std::string reason;
};

const json& record_field(const json& rec, const std::string& key, size_t index) {
  if (!rec.is_object()) {
    throw Error(ErrorKind::SchemaViolation, "record " + std::to_string(index) + ": expected object");
  }
  auto it = rec.find(key);
  if (it == rec.end()) {
    throw Error(ErrorKind::SchemaViolation,
                "record " + std::to_string(index) + ": missing key '" + key + "'");
  }
  return *it;
}

std::string span_text(const json& span, const std::vector<std::string>& tokens,
                      const FieldMapping& m, size_t index) {
  if (!span.is_array() || span.size() != 2 || !span[0].is_number_integer() ||
      !span[1].is_number_integer()) {
    throw Error(ErrorKind::SchemaViolation,
                "record " + std::to_string(index) + ": span must be [start, end]");
  }
  const int64_t start = span[0].get<int64_t>();
  int64_t end = span[1].get<int64_t>();
  if (m.span_end_inclusive) ++end;
  if (start < 0 || end <= start || end > static_cast<int64_t>(tokens.size())) {
    throw SkipRecord{"SpanOutOfRange"};
  }
  std::string joined;
  for (int64_t i = start; i < end; ++i) {
    if (i > start) joined += ' ';
    joined += tokens[static_cast<size_t>(i)];
  }
  return normalize(joined);
}

std::string label_of(const json& obj, const std::string& key, size_t index) {
  const json& v = record_field(obj, key, index);
  if (!v.is_string()) {
    throw Error(ErrorKind::SchemaViolation,
                "record " + std::to_string(index) + ": '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

SentenceSample convert_record(const json& rec, size_t index, const FieldMapping& m) {
  const json& tok = record_field(rec, m.tokens, index);
  if (!tok.is_array()) {
    throw Error(ErrorKind::SchemaViolation, "record " + std::to_string(index) + ": tokens");
  }
  std::vector<std::string> tokens;
  tokens.reserve(tok.size());
  for (const auto& t : tok) {
    if (!t.is_string()) {
      throw Error(ErrorKind::SchemaViolation, "record " + std::to_string(index) + ": token type");
    }
    tokens.push_back(t.get<std::string>());
  }

  SentenceSample sample;
  if (auto it = rec.find(m.id); it != rec.end() && (it->is_string() || it->is_number_integer())) {
    sample.id = it->is_string() ? it->get<std::string>() : std::to_string(it->get<int64_t>());
  } else {
    sample.id = m.id_prefix + std::to_string(index);
  }

  std::string joined;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += tokens[i];
  }
  sample.text = normalize(joined);

  const json& rels = record_field(rec, m.relations, index);
  if (!rels.is_array()) {
    throw Error(ErrorKind::SchemaViolation, "record " + std::to_string(index) + ": relations");
  }
  // Validate every key before deciding to skip, so schema problems are
  // never hidden behind a span problem.
  std::optional<SkipRecord> skip;
  for (const auto& rel : rels) {
    std::string head, tail;
    try {
      head = span_text(record_field(rel, m.head, index), tokens, m, index);
      tail = span_text(record_field(rel, m.tail, index), tokens, m, index);
    } catch (const SkipRecord& s) {
      if (!skip) skip = s;
    }
    std::string relation = label_of(rel, m.relation_label, index);
    std::vector<std::pair<std::string, std::string>> quals;
    const json& qs = record_field(rel, m.qualifiers, index);
    if (!qs.is_array()) {
      throw Error(ErrorKind::SchemaViolation, "record " + std::to_string(index) + ": qualifiers");
    }
    for (const auto& q : qs) {
      std::string key = label_of(q, m.qualifier_label, index);
      try {
        quals.emplace_back(std::move(key),
                           span_text(record_field(q, m.qualifier_span, index), tokens, m, index));
      } catch (const SkipRecord& s) {
        if (!skip) skip = s;
      }
    }
    if (skip) continue;
    try {
      sample.gold.emplace_back(head, relation, tail, std::move(quals));
    } catch (const Error& e) {
      skip = SkipRecord{"EmptyField"};
    }
  }
  if (skip) throw *skip;
  if (sample.text.empty()) throw SkipRecord{"EmptyText"};
  return sample;
}

std::vector<json> read_raw_records(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  std::vector<json> records;
  const size_t first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return records;
  try {
    if (content[first] == '[') {
      json doc = json::parse(content);
      for (auto& rec : doc) records.push_back(std::move(rec));
      return records;
    }
    size_t line_no = 0;
    for (const std::string& line : split_lines(content)) {
      ++line_no;
      if (trim(line).empty()) continue;
      try {
        records.push_back(json::parse(line));
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::SchemaViolation,
                    path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, path.string() + ": " + e.what());
  }
  return records;
}

}  // namespace

ConversionStats convert_hyperred(const std::filesystem::path& raw_path, const FieldMapping& mapping,
                                 const std::filesystem::path& out_path) {
  mapping.validate();
  ConversionStats stats;
  std::string out;
  std::set<std::string> ids;
  const std::vector<json> records = read_raw_records(raw_path);
  for (size_t index = 0; index < records.size(); ++index) {
    ++stats.samples_read;
    try {
      SentenceSample sample = convert_record(records[index], index, mapping);
      if (!ids.insert(sample.id).second) throw SkipRecord{"DuplicateId"};
      stats.facts_emitted += sample.gold.size();
      ++stats.samples_written;
      out += sample_to_jsonl(sample);
      out += '\n';
    } catch (const SkipRecord& s) {
      stats.skipped.push_back({index, s.reason});
    }
  }
  write_file_atomic(out_path, out);
  return stats;
}

std::string sample_to_jsonl(const SentenceSample& sample) {
  json doc = {{"id", sample.id}, {"text", sample.text}, {"facts", facts_to_json(sample.gold)}};
  return doc.dump();
}

std::vector<SentenceSample> parse_samples(std::string_view jsonl, const std::string& source) {
  std::vector<SentenceSample> samples;
  std::set<std::string> ids;
  size_t line_no = 0;
  for (const std::string& line : split_lines(jsonl)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
    }
    SentenceSample s;
    s.id = require_string(doc, "id", where);
    s.text = normalize(require_string(doc, "text", where));
    if (s.id.empty()) throw Error(ErrorKind::SchemaViolation, where + ": empty id");
    if (s.text.empty()) throw Error(ErrorKind::SchemaViolation, where + ": empty text");
    if (auto it = doc.find("facts"); it != doc.end() && !it->is_null()) {
      s.gold = facts_from_json(*it, where + ".facts");
    }
    if (!ids.insert(s.id).second) throw Error(ErrorKind::DuplicateId, s.id);
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<SentenceSample> load_samples(const std::filesystem::path& path) {
  return parse_samples(read_file(path), path.string());
}

Xorshift64Star::Xorshift64Star(uint64_t seed) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  state_ = z != 0 ? z : 0x9E3779B97F4A7C15ULL;
}

uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

uint64_t Xorshift64Star::below(uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::InvalidArgument, "below(0)");
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::vector<SentenceSample> sample_subset(const std::vector<SentenceSample>& samples, size_t n,
                                          uint64_t seed) {
  if (n > samples.size()) {
    throw Error(ErrorKind::SubsetTooLarge,
                std::to_string(n) + " > " + std::to_string(samples.size()));
  }
  std::vector<size_t> order(samples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Xorshift64Star rng(seed);
  std::vector<SentenceSample> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t j = i + static_cast<size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
    out.push_back(samples[order[i]]);
  }
  return out;
}

}  // namespace hrex
