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
#include <string>
#include <string_view>

namespace hrex {

class Ontology;

// One worked example shown to the model: a sentence, the reasoning that
// leads to its facts, and those facts in the output line format.
struct CoTExemplar {
  std::string context_sentence;
  std::string reasoning;
  std::string expected_output;

  friend bool operator==(const CoTExemplar&, const CoTExemplar&) = default;
};

CoTExemplar parse_exemplar(std::string_view json_text);
CoTExemplar load_exemplar(const std::filesystem::path& path);
std::string exemplar_hash(const CoTExemplar& exemplar);

inline constexpr std::string_view kSentenceSlot = "{SENTENCE}";

struct PromptSpec {
  std::string system_text;
  std::string user_template;  // exactly one kSentenceSlot
  CoTExemplar exemplar;
  std::string format_grammar_text;
};

struct RenderedPrompt {
  std::string system_text;
  std::string user_text;
  std::string prompt_hash;  // sha256 over (system_text, user_text)

  static std::string hash_of(std::string_view system_text, std::string_view user_text);
};

/// The output grammar as it is explained to the model.
std::string format_grammar_text();

/// Throws ExemplarUnparseable unless the exemplar's expected output parses
/// strictly against `ont` with at least one fact and no diagnostics.
PromptSpec build_prompt_spec(const Ontology& ont, const CoTExemplar& exemplar);

/// Throws EmptySentence when the sentence normalizes to nothing.
RenderedPrompt render(const PromptSpec& spec, std::string_view sentence);

}  // namespace hrex
