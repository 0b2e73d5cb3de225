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

#include "hrex/prompt.hpp"

#include "hrex/error.hpp"
#include "hrex/hash.hpp"
#include "hrex/io.hpp"
#include "hrex/json_codec.hpp"
#include "hrex/ontology.hpp"
#include "hrex/parser.hpp"
#include "hrex/text.hpp"

namespace hrex {

CoTExemplar parse_exemplar(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, std::string("exemplar: ") + e.what());
  }
  CoTExemplar ex{normalize(require_string(doc, "context_sentence", "exemplar")),
                 trim(require_string(doc, "reasoning", "exemplar")),
                 trim(require_string(doc, "expected_output", "exemplar"))};
  if (ex.context_sentence.empty() || ex.reasoning.empty()) {
    throw Error(ErrorKind::SchemaViolation, "exemplar: empty context_sentence or reasoning");
  }
  return ex;
}

CoTExemplar load_exemplar(const std::filesystem::path& path) {
  return parse_exemplar(read_file(path));
}

std::string exemplar_hash(const CoTExemplar& exemplar) {
  return sha256_hex_fields({exemplar.context_sentence, exemplar.reasoning, exemplar.expected_output});
}

std::string RenderedPrompt::hash_of(std::string_view system_text, std::string_view user_text) {
  return sha256_hex_fields({system_text, user_text});
}

std::string format_grammar_text() {
  return
      "Write every fact on its own line in exactly this form:\n"
      "(head entity | relation | tail entity) [qualifier key: value; qualifier key: value]\n"
      "The part in square brackets is optional. Leave it out when the sentence gives no "
      "qualifier for that fact.\n"
      "Separate qualifiers with a semicolon. Write each qualifier as its key, a colon, and "
      "its value.\n"
      "If an entity or a value itself contains any of the characters \\ | ; : ( ) [ ] then "
      "put a backslash directly in front of that character.\n"
      "Use relation names and qualifier keys exactly as they are listed above.\n"
      "Do not number the lines and do not add anything after the last fact.\n";
}

PromptSpec build_prompt_spec(const Ontology& ont, const CoTExemplar& exemplar) {
  const ParseOutcome check = parse_completion(exemplar.expected_output, ont, /*strict=*/true);
  if (check.facts.empty() || !check.diagnostics.empty()) {
    std::string why = check.facts.empty() ? "no facts" : std::string(to_string(check.diagnostics[0].reason));
    throw Error(ErrorKind::ExemplarUnparseable, why);
  }

  PromptSpec spec;
  spec.exemplar = exemplar;
  spec.format_grammar_text = format_grammar_text();
  spec.user_template = "Sentence: " + std::string(kSentenceSlot) + "\nOutput:";

  std::string& s = spec.system_text;
  s += "You extract hyper-relational facts from a single sentence. A hyper-relational fact is "
       "a relation triple made of a head entity, a relation and a tail entity, together with "
       "qualifiers. Qualifiers are key: value pairs that add context such as time, place, role "
       "or quantity to the whole triple, not to one of its entities.\n";
  s += "Extract relations, entities and qualifiers from the sentence the user gives you.\n\n";

  s += "## Entities\n";
  s += "An entity is a specific thing named in the sentence, for example a person, a country, "
       "a city, an organization, an event, a creative work, or a type of document. Write "
       "entities the way the sentence writes them.\n\n";

  s += "## Relations\n";
  s += "A relation links the head entity to the tail entity. Use only these " +
       std::to_string(ont.relations().size()) + " relations. Each line gives the relation "
       "name followed by what it means.\n";
  for (const auto& r : ont.relations()) s += "- " + r.name + ": " + r.description + "\n";
  s += "\n";

  s += "## Qualifiers\n";
  s += "A qualifier narrows down when, where or in which role a fact holds. It is written as "
       "a key and a value. Use only these " + std::to_string(ont.qualifiers().size()) +
       " qualifier keys. Each line gives the key followed by what it means.\n";
  for (const auto& q : ont.qualifiers()) s += "- " + q.key + ": " + q.description + "\n";
  s += "\n";

  s += "## Output format\n";
  s += spec.format_grammar_text;
  s += "\n";

  s += "## Example\n";
  s += "Sentence: " + exemplar.context_sentence + "\n";
  s += "Reasoning: " + exemplar.reasoning + "\n";
  s += "Output:\n" + exemplar.expected_output + "\n";
  return spec;
}

RenderedPrompt render(const PromptSpec& spec, std::string_view sentence) {
  const std::string text = normalize(sentence);
  if (text.empty()) throw Error(ErrorKind::EmptySentence, "sentence is empty");
  const size_t slot = spec.user_template.find(kSentenceSlot);
  if (slot == std::string::npos ||
      spec.user_template.find(kSentenceSlot, slot + 1) != std::string::npos) {
    throw Error(ErrorKind::InvalidArgument, "user template must hold exactly one {SENTENCE}");
  }
  RenderedPrompt out;
  out.system_text = spec.system_text;
  out.user_text = spec.user_template.substr(0, slot) + text +
                  spec.user_template.substr(slot + kSentenceSlot.size());
  out.prompt_hash = RenderedPrompt::hash_of(out.system_text, out.user_text);
  return out;
}

}  // namespace hrex
