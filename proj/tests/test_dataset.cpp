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

#include <doctest.h>

#include "hrex/dataset.hpp"
#include "hrex/error.hpp"
#include "hrex/io.hpp"
#include "hrex/json_codec.hpp"
#include "support.hpp"

using namespace hrex;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

const char* kRaw = R"([
  {"tokens": ["Barack", "Obama", "graduated", "from", "Harvard", "University", "in", "1991", "."],
   "entities": [],
   "relations": [{"head": [0, 2], "tail": [4, 6], "label": "educated at",
                  "qualifiers": [{"span": [7, 8], "label": "end time"}]}]},
  {"tokens": ["Palermo", "is", "in", "Sicily"],
   "relations": [{"head": [0, 1], "tail": [3, 4], "label": "located in", "qualifiers": []},
                 {"head": [0, 1], "tail": [3, 4], "label": "capital of",
                  "qualifiers": [{"span": [9, 12], "label": "end time"}]}]},
  {"tokens": ["No", "facts", "here"], "relations": []}
])";

std::vector<SentenceSample> make_samples(size_t n) {
  std::vector<SentenceSample> out;
  for (size_t i = 0; i < n; ++i) out.push_back({"s" + std::to_string(i), "text " + std::to_string(i), {}});
  return out;
}

}  // namespace

TEST_CASE("convert_hyperred maps records and skips bad spans") {
  test::TempDir dir;
  write_file_atomic(dir / "raw.json", kRaw);
  const ConversionStats stats = convert_hyperred(dir / "raw.json", FieldMapping{}, dir / "out.jsonl");
  CHECK(stats.samples_read == 3);
  CHECK(stats.samples_written == 2);
  CHECK(stats.facts_emitted == 1);
  REQUIRE(stats.skipped.size() == 1);
  CHECK(stats.skipped[0].record_index == 1);
  CHECK(stats.skipped[0].reason == "SpanOutOfRange");
  CHECK(stats.skipped_by_reason().at("SpanOutOfRange") == 1);

  const auto samples = load_samples(dir / "out.jsonl");
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].id == "hyperred-0");
  CHECK(samples[0].text == "Barack Obama graduated from Harvard University in 1991 .");
  REQUIRE(samples[0].gold.size() == 1);
  CHECK(samples[0].gold[0] ==
        HyperFact("Barack Obama", "educated at", "Harvard University", {{"end time", "1991"}}));
  CHECK(samples[1].gold.empty());
  // Stats are valid JSON.
  CHECK(json::parse(stats.to_json())["samples_written"] == 2);
}

TEST_CASE("convert_hyperred accepts JSONL and a custom mapping") {
  test::TempDir dir;
  write_file_atomic(dir / "raw.jsonl",
                    R"({"words": ["A", "b"], "rels": [{"h": [0, 0], "t": [1, 1], "type": "r", "quals": []}], "uid": "x1"})"
                    "\n");
  write_file_atomic(dir / "map.json",
                    R"({"tokens": "words", "relations": "rels", "head": "h", "tail": "t",
                        "relation_label": "type", "qualifiers": "quals", "id": "uid",
                        "span_end_inclusive": true})");
  const auto stats = convert_hyperred(dir / "raw.jsonl", load_field_mapping(dir / "map.json"),
                                      dir / "out.jsonl");
  CHECK(stats.samples_written == 1);
  const auto samples = load_samples(dir / "out.jsonl");
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].id == "x1");
  CHECK(samples[0].gold[0] == HyperFact("A", "r", "b"));
}

TEST_CASE("convert_hyperred rejects missing keys") {
  test::TempDir dir;
  write_file_atomic(dir / "raw.json", R"([{"tokens": ["a"]}])");
  CHECK(kind_of([&] { convert_hyperred(dir / "raw.json", FieldMapping{}, dir / "o.jsonl"); }) ==
        ErrorKind::SchemaViolation);
  CHECK(kind_of([&] { convert_hyperred(dir / "missing.json", FieldMapping{}, dir / "o.jsonl"); }) ==
        ErrorKind::FileUnreadable);
}

TEST_CASE("conversion conserves fact counts") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    json raw = json::array();
    size_t expected = 0;
    for (int r = 0; r < 10; ++r) {
      const int n_tok = 6;
      json rec = {{"tokens", {"t0", "t1", "t2", "t3", "t4", "t5"}}, {"relations", json::array()}};
      bool bad = false;
      const size_t n_rel = std::uniform_int_distribution<size_t>(0, 3)(rng);
      for (size_t k = 0; k < n_rel; ++k) {
        const int end = std::uniform_int_distribution<int>(1, n_tok + 1)(rng);
        if (end > n_tok) bad = true;
        rec["relations"].push_back(
            {{"head", {0, 1}}, {"tail", {end - 1, end}}, {"label", "r" + std::to_string(k)}, {"qualifiers", json::array()}});
      }
      if (!bad) expected += n_rel;
      raw.push_back(rec);
    }
    test::TempDir dir;
    write_file_atomic(dir / "raw.json", raw.dump());
    const auto stats = convert_hyperred(dir / "raw.json", FieldMapping{}, dir / "out.jsonl");
    CHECK(stats.facts_emitted == expected);
    size_t loaded = 0;
    for (const auto& s : load_samples(dir / "out.jsonl")) loaded += s.gold.size();
    CHECK(loaded == expected);
  }
}

TEST_CASE("load_samples") {
  CHECK(parse_samples("", "t").empty());
  const auto two = parse_samples(
      "{\"id\":\"b\",\"text\":\"x\",\"facts\":[]}\n{\"id\":\"a\",\"text\":\"y\"}\n", "t");
  REQUIRE(two.size() == 2);
  CHECK(two[0].id == "b");
  CHECK(two[1].id == "a");
  CHECK(kind_of([] { parse_samples("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}", "t"); }) ==
        ErrorKind::DuplicateId);
  CHECK(kind_of([] { parse_samples("{\"id\":\"a\",\"text\":\"  \"}", "t"); }) ==
        ErrorKind::SchemaViolation);
  CHECK(kind_of([] { parse_samples("{\"id\":\"a\"}", "t"); }) == ErrorKind::SchemaViolation);
}

TEST_CASE("sample_to_jsonl round-trips") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    SentenceSample s{"id" + std::to_string(i), "some text", {test::random_fact(rng), test::random_fact(rng)}};
    const auto back = parse_samples(sample_to_jsonl(s), "t");
    REQUIRE(back.size() == 1);
    CHECK(back[0].gold == s.gold);
  }
}

TEST_CASE("sample_subset") {
  const auto all = make_samples(20);
  SUBCASE("full size is a permutation") {
    auto out = sample_subset(all, 20, 42);
    std::set<std::string> ids;
    for (auto& s : out) ids.insert(s.id);
    CHECK(ids.size() == 20);
  }
  SUBCASE("deterministic") { CHECK(sample_subset(all, 7, 42) == sample_subset(all, 7, 42)); }
  SUBCASE("seed matters") { CHECK(sample_subset(all, 7, 42) != sample_subset(all, 7, 43)); }
  SUBCASE("prefix property") {
    const auto small = sample_subset(all, 3, 9);
    const auto big = sample_subset(all, 10, 9);
    CHECK(std::equal(small.begin(), small.end(), big.begin()));
  }
  SUBCASE("empty") { CHECK(sample_subset(all, 0, 1).empty()); }
  SUBCASE("too large") {
    CHECK(kind_of([&] { sample_subset(all, 21, 1); }) == ErrorKind::SubsetTooLarge);
  }
}

TEST_CASE("xorshift64* known sequence and bounded draws") {
  Xorshift64Star a(0), b(0);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Xorshift64Star r(123);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 5000; ++i) ++counts[r.below(5)];
  for (int c : counts) CHECK(c > 800);
}
