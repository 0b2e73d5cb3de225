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

#include "hrex/error.hpp"
#include "hrex/ontology.hpp"
#include "hrex/parser.hpp"
#include "hrex/prompt.hpp"
#include "support.hpp"

using namespace hrex;

namespace {

const Ontology& ontology() {
  static const Ontology ont = load_ontology(test::data_dir() / "ontology" / "hyperred.json");
  return ont;
}

const CoTExemplar& exemplar() {
  static const CoTExemplar ex = load_exemplar(test::data_dir() / "exemplar" / "obama.json");
  return ex;
}

size_t count_of(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("system text lists ontology entries") {
  const PromptSpec spec = build_prompt_spec(ontology(), exemplar());
  CHECK(spec.system_text.find("educated at: educational institution attended by subject\n") !=
        std::string::npos);
  CHECK(spec.system_text.find("end time: time an event ends, an item stops existing, or a "
                              "statement becomes invalid") != std::string::npos);
  for (const auto& r : ontology().relations()) {
    CHECK(count_of(spec.system_text, "- " + r.name + ": " + r.description + "\n") == 1);
  }
  for (const auto& q : ontology().qualifiers()) {
    CHECK(count_of(spec.system_text, "- " + q.key + ": " + q.description + "\n") == 1);
  }
  CHECK(spec.system_text.find(spec.format_grammar_text) != std::string::npos);
  CHECK(spec.system_text.find(exemplar().expected_output) != std::string::npos);
}

TEST_CASE("the shipped exemplar parses cleanly") {
  const auto out = parse_completion(exemplar().expected_output, ontology(), true);
  CHECK(out.facts.size() == 1);
  CHECK(out.diagnostics.empty());
}

TEST_CASE("malformed exemplars are rejected") {
  CoTExemplar bad = exemplar();
  bad.expected_output = "(Barack Obama | educated at)";
  CHECK_THROWS_AS(build_prompt_spec(ontology(), bad), Error);
  try {
    build_prompt_spec(ontology(), bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExemplarUnparseable);
  }
  bad.expected_output = "(a | not a relation | b)";
  CHECK_THROWS_AS(build_prompt_spec(ontology(), bad), Error);
}

TEST_CASE("render") {
  const PromptSpec spec = build_prompt_spec(ontology(), exemplar());
  const RenderedPrompt a = render(spec, "Palermo is in Sicily.");
  const RenderedPrompt b = render(spec, "Palermo is in Sicily.");
  const RenderedPrompt c = render(spec, "Another sentence.");
  CHECK(a.prompt_hash == b.prompt_hash);
  CHECK(a.user_text == "Sentence: Palermo is in Sicily.\nOutput:");
  CHECK(a.system_text == c.system_text);
  CHECK(a.user_text != c.user_text);
  CHECK(a.prompt_hash != c.prompt_hash);
  CHECK(a.prompt_hash == RenderedPrompt::hash_of(a.system_text, a.user_text));
  CHECK_THROWS_AS(render(spec, ""), Error);
  try {
    render(spec, "   ");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptySentence);
  }
}

TEST_CASE("user template must hold one slot") {
  PromptSpec spec = build_prompt_spec(ontology(), exemplar());
  spec.user_template = "{SENTENCE} {SENTENCE}";
  CHECK_THROWS_AS(render(spec, "x"), Error);
  spec.user_template = "none";
  CHECK_THROWS_AS(render(spec, "x"), Error);
}

TEST_CASE("exemplar loading") {
  CHECK_THROWS_AS(parse_exemplar(R"({"context_sentence": "x"})"), Error);
  const CoTExemplar ex = parse_exemplar(
      R"J({"context_sentence": " s ", "reasoning": "r", "expected_output": "(a | educated at | b)"})J");
  CHECK(ex.context_sentence == "s");
  CHECK(exemplar_hash(ex) != exemplar_hash(exemplar()));
}
