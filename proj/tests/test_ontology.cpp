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

#include <random>

#include "hrex/error.hpp"
#include "hrex/io.hpp"
#include "hrex/ontology.hpp"
#include "support.hpp"

using namespace hrex;

namespace {

Ontology shipped() { return load_ontology(test::data_dir() / "ontology" / "hyperred.json"); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("shipped ontology has 62 relations and 44 qualifiers") {
  const Ontology ont = shipped();
  CHECK(ont.relations().size() == 62);
  CHECK(ont.qualifiers().size() == 44);
}

TEST_CASE("load_ontology keeps descriptions") {
  const std::string text = R"({"name":"t","version":"1","relations":[
      {"name":"educated at","description":"educational institution attended by subject"}],
      "qualifiers":[]})";
  const Ontology ont = parse_ontology(text);
  REQUIRE(ont.lookup_relation("educated at"));
  CHECK(ont.lookup_relation("educated at")->description ==
        "educational institution attended by subject");
}

TEST_CASE("load_ontology rejects bad input") {
  CHECK(kind_of([] { parse_ontology(R"({"name":"t","version":"1","relations":[],"qualifiers":[]})"); }) ==
        ErrorKind::SchemaViolation);
  CHECK(kind_of([] {
          parse_ontology(R"({"name":"t","version":"1","relations":[{"name":"r","description":"d"}],
            "qualifiers":[{"key":"end time","description":"x"},{"key":"end time","description":"y"}]})");
        }) == ErrorKind::DuplicateName);
  CHECK(kind_of([] {
          parse_ontology(R"({"name":"t","version":"1","relations":[{"name":" ","description":"d"}],"qualifiers":[]})");
        }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { parse_ontology("not json"); }) == ErrorKind::SchemaViolation);
  CHECK(kind_of([] { load_ontology("/nonexistent/ontology.json"); }) == ErrorKind::FileUnreadable);
}

TEST_CASE("lookups on the shipped ontology") {
  const Ontology ont = shipped();
  CHECK(ont.lookup_relation("educated at").has_value());
  CHECK_FALSE(ont.lookup_relation("EDUCATED AT").has_value());
  CHECK_FALSE(ont.lookup_relation("").has_value());
  REQUIRE(ont.lookup_qualifier("end time").has_value());
  CHECK(ont.lookup_qualifier("end time")->description.find("time an event ends, an item stops existing") !=
        std::string::npos);
  CHECK_FALSE(ont.lookup_qualifier("start tme").has_value());
  CHECK(ont.lookup_qualifier(" end time ").has_value());
}

TEST_CASE("collections are lexicographically ordered") {
  const Ontology ont = shipped();
  CHECK(std::is_sorted(ont.relations().begin(), ont.relations().end(),
                       [](auto& a, auto& b) { return a.name < b.name; }));
  CHECK(std::is_sorted(ont.qualifiers().begin(), ont.qualifiers().end(),
                       [](auto& a, auto& b) { return a.key < b.key; }));
}

TEST_CASE("random ontologies round-trip and answer lookups exactly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::set<std::string> names, keys;
    const size_t nr = std::uniform_int_distribution<size_t>(1, 12)(rng);
    const size_t nq = std::uniform_int_distribution<size_t>(0, 12)(rng);
    while (names.size() < nr) names.insert(test::ascii(test::random_u32(rng, 5, 6)) + "r");
    while (keys.size() < nq) keys.insert(test::ascii(test::random_u32(rng, 5, 6)) + "q");
    std::vector<RelationDef> rels;
    for (const auto& n : names) rels.push_back({n, "desc " + n});
    std::shuffle(rels.begin(), rels.end(), rng);
    std::vector<QualifierDef> quals;
    for (const auto& k : keys) quals.push_back({k, "about " + k});
    std::shuffle(quals.begin(), quals.end(), rng);
    const Ontology ont("rand", "1", rels, quals);

    CHECK(parse_ontology(ont.to_json()) == ont);
    CHECK(parse_ontology(ont.to_json()).content_hash() == ont.content_hash());
    for (int probe = 0; probe < 20; ++probe) {
      const std::string p = test::ascii(test::random_u32(rng, 5, 6)) + (probe % 2 ? "r" : "q");
      CHECK(ont.has_relation(p) == (names.count(p) == 1));
      CHECK(ont.has_qualifier(p) == (keys.count(p) == 1));
    }
    for (const auto& n : names) CHECK(ont.has_relation(n));
  }
}

TEST_CASE("io helpers") {
  test::TempDir dir;
  write_file_atomic(dir / "a.txt", "one\r\ntwo\n");
  CHECK(read_file(dir / "a.txt") == "one\r\ntwo\n");
  CHECK(split_lines("one\r\ntwo\n") == std::vector<std::string>{"one", "two"});
  CHECK(split_lines("") == std::vector<std::string>{});
  CHECK(split_lines("x") == std::vector<std::string>{"x"});
}
