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

#include <sstream>

#include "hrex/cli/commands.hpp"
#include "hrex/cli/records.hpp"
#include "hrex/error.hpp"
#include "hrex/io.hpp"
#include "hrex/json_codec.hpp"
#include "hrex/ontology.hpp"
#include "hrex/prompt.hpp"
#include "support.hpp"

using namespace hrex;
using namespace hrex::cli;
using namespace std::chrono_literals;

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

const char* kDataset =
    R"({"id":"s1","text":"Barack Obama graduated from Harvard University in 1991.","facts":[{"head":"Barack Obama","relation":"educated at","tail":"Harvard University","qualifiers":[{"key":"end time","value":"1991"}]}]}
{"id":"s2","text":"Palermo was the capital of the Kingdom of Sicily.","facts":[{"head":"Palermo","relation":"capital of","tail":"Kingdom of Sicily","qualifiers":[]}]}
{"id":"s3","text":"Marie Curie won the Nobel Prize in Physics in 1903.","facts":[{"head":"Marie Curie","relation":"award received","tail":"Nobel Prize in Physics","qualifiers":[{"key":"point in time","value":"1903"}]}]}
)";

ExtractConfig base_config(const test::TempDir& dir) {
  write_file_atomic(dir / "data.jsonl", kDataset);
  ExtractConfig c;
  c.dataset = dir / "data.jsonl";
  c.ontology = test::data_dir() / "ontology" / "hyperred.json";
  c.exemplar = test::data_dir() / "exemplar" / "obama.json";
  c.backend = BackendKind::Mock;
  c.mock_text = "(Barack Obama | educated at | Harvard University) [end time: 1991]";
  c.out = dir / "records.jsonl";
  return c;
}

// Answers with the gold facts of whichever sentence is in the prompt.
std::shared_ptr<MockBackend> oracle_backend(std::chrono::milliseconds delay = {}) {
  return std::make_shared<MockBackend>(
      [](const RenderedPrompt& p, const std::string&) -> std::string {
        if (p.user_text.find("Obama") != std::string::npos)
          return "(Barack Obama | educated at | Harvard University) [end time: 1991]";
        if (p.user_text.find("Palermo") != std::string::npos)
          return "Facts:\n(Palermo | capital of | Kingdom of Sicily)";
        return "(Marie Curie | award received | Nobel Prize in Physics) [point in time: 1903]";
      },
      delay);
}

std::string manifest_without_times(const std::filesystem::path& p) {
  json j = json::parse(read_file(p));
  j.erase("started_at");
  j.erase("finished_at");
  return j.dump();
}

}  // namespace

TEST_CASE("extract with the mock backend") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.runs = 2;
  std::ostringstream log;
  const ExtractSummary s = cmd_extract(c, log);
  CHECK(s.samples == 3);
  CHECK(s.errors == 0);
  CHECK(s.exit_code == kExitOk);
  const auto records = load_records(c.out);
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "s1");
  CHECK(records[2].id == "s3");
  for (const auto& r : records) {
    CHECK(r.runs.size() == 2);
    CHECK(r.n_runs == 2);
    CHECK_FALSE(r.runs[0].latency_us.has_value());
  }

  // The stored prompt hash is the hash of the rendered prompt.
  const PromptSpec spec = build_prompt_spec(load_ontology(c.ontology), load_exemplar(c.exemplar));
  CHECK(records[1].prompt_hash == render(spec, records[1].text).prompt_hash);

  const std::string first = read_file(c.out);
  cmd_extract(c, log);
  CHECK(read_file(c.out) == first);

  const json manifest = json::parse(read_file(default_manifest_path(c.out)));
  CHECK(manifest["config"]["n_runs"] == 2);
  CHECK(manifest["config"]["backend"] == "mock");
  CHECK(manifest["samples"] == 3);
  CHECK(manifest["config"].contains("exemplar_hash"));
}

TEST_CASE("record timing is opt-in") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.record_timing = true;
  std::ostringstream log;
  cmd_extract(c, log);
  for (const auto& r : load_records(c.out)) CHECK(r.runs[0].latency_us.has_value());
}

TEST_CASE("replay with a missing fixture yields an error record") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.backend_override = oracle_backend();
  c.cache = dir / "cache";
  std::ostringstream log;
  cmd_extract(c, log);

  // Drop one cached response and replay from the cache directory.
  const PromptSpec spec = build_prompt_spec(load_ontology(c.ontology), load_exemplar(c.exemplar));
  const auto samples = load_samples(c.dataset);
  const std::string key = cache_key(c.params.model, c.params.temperature,
                                    render(spec, samples[1].text).prompt_hash, 0);
  std::filesystem::remove(dir.path / "cache" / (key + ".json"));

  ExtractConfig r = base_config(dir);
  r.backend = BackendKind::Replay;
  r.fixtures = dir.path / "cache";
  r.out = dir / "replayed.jsonl";
  const ExtractSummary s = cmd_extract(r, log);
  CHECK(s.errors == 1);
  CHECK(s.exit_code == kExitSampleErrors);
  const auto records = load_records(r.out);
  REQUIRE(records.size() == 3);
  CHECK_FALSE(records[0].error.has_value());
  REQUIRE(records[1].error.has_value());
  CHECK(records[1].error->find("ReplayMiss") != std::string::npos);
  CHECK_FALSE(records[2].error.has_value());
  CHECK(log.str().find("s2") != std::string::npos);
}

TEST_CASE("rerun against the cache is byte-identical and makes no calls") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.cache = dir / "cache";
  c.runs = 3;
  auto backend = oracle_backend();
  c.backend_override = backend;
  std::ostringstream log;
  cmd_extract(c, log);
  const std::string first = read_file(c.out);
  const std::string m1 = manifest_without_times(default_manifest_path(c.out));
  CHECK(backend->invocations() == 9);

  auto second_backend = oracle_backend();
  c.backend_override = second_backend;
  cmd_extract(c, log);
  CHECK(second_backend->invocations() == 0);
  CHECK(read_file(c.out) == first);
  CHECK(manifest_without_times(default_manifest_path(c.out)) == m1);
}

TEST_CASE("parallel workers keep dataset order and respect the in-flight bound") {
  test::TempDir dir;
  std::string big;
  for (int i = 0; i < 24; ++i) {
    big += R"({"id":"n)" + std::to_string(i) + R"(","text":"Sentence number )" + std::to_string(i) +
           R"( about Palermo."})" + "\n";
  }
  write_file_atomic(dir / "big.jsonl", big);
  ExtractConfig c = base_config(dir);
  c.dataset = dir / "big.jsonl";
  auto backend = oracle_backend(5ms);
  c.backend_override = backend;
  c.jobs = 8;
  c.max_in_flight = 3;
  std::ostringstream log;
  cmd_extract(c, log);
  const auto records = load_records(c.out);
  REQUIRE(records.size() == 24);
  for (int i = 0; i < 24; ++i) CHECK(records[i].id == "n" + std::to_string(i));
  CHECK(backend->max_concurrent() <= 3);

  ExtractConfig serial = c;
  serial.jobs = 1;
  serial.out = dir / "serial.jsonl";
  serial.backend_override = oracle_backend();
  cmd_extract(serial, log);
  CHECK(read_file(serial.out) == read_file(c.out));
}

TEST_CASE("subset selection is seeded") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.subset = 2;
  c.seed = 5;
  std::ostringstream log;
  CHECK(cmd_extract(c, log).samples == 2);
  const std::string first = read_file(c.out);
  cmd_extract(c, log);
  CHECK(read_file(c.out) == first);
  c.subset = 4;
  CHECK(kind_of([&] { cmd_extract(c, log); }) == ErrorKind::SubsetTooLarge);
}

TEST_CASE("fatal configuration errors") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  std::ostringstream log;
  c.runs = 0;
  CHECK(kind_of([&] { cmd_extract(c, log); }) == ErrorKind::InvalidArgument);
  c = base_config(dir);
  c.backend = BackendKind::Replay;
  CHECK(kind_of([&] { cmd_extract(c, log); }) == ErrorKind::InvalidArgument);
  c = base_config(dir);
  c.ontology = dir / "none.json";
  CHECK(kind_of([&] { cmd_extract(c, log); }) == ErrorKind::FileUnreadable);
}

TEST_CASE("eval over records") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.backend_override = oracle_backend();
  c.runs = 2;
  std::ostringstream log;
  cmd_extract(c, log);

  EvalConfig e;
  e.gold = c.dataset;
  e.pred = c.out;
  std::ostringstream console;
  SUBCASE("exact on perfect predictions") {
    const auto r = cmd_eval(e, console);
    CHECK(r.micro.precision == 1.0);
    CHECK(r.micro.recall == 1.0);
    CHECK(r.macro.f1 == 1.0);
    CHECK(r.label == "gpt-3.5-turbo");
    CHECK(r.provenance.is_object());
    CHECK(console.str().find("| Model | Precision | Recall | F1 |") != std::string::npos);
  }
  SUBCASE("soft with the exact backend") {
    e.metric = "soft";
    e.sim = eval::SimilarityKind::Exact;
    CHECK(cmd_eval(e, console).micro.f1 == 1.0);
  }
  SUBCASE("score run out of range") {
    e.score_run = 2;
    CHECK(kind_of([&] { cmd_eval(e, console); }) == ErrorKind::InvalidArgument);
  }
  SUBCASE("unknown metric") {
    e.metric = "bleu";
    CHECK(kind_of([&] { cmd_eval(e, console); }) == ErrorKind::MetricUnknown);
  }
  SUBCASE("outputs are written") {
    e.out = dir / "eval.json";
    e.csv = dir / "eval.csv";
    e.label = "mine";
    cmd_eval(e, console);
    CHECK(json::parse(read_file(dir / "eval.json"))["label"] == "mine");
    CHECK(read_file(dir / "eval.csv").find("s2") != std::string::npos);
  }
}

TEST_CASE("eval over canonical predictions") {
  test::TempDir dir;
  write_file_atomic(dir / "gold.jsonl", kDataset);
  write_file_atomic(dir / "empty.jsonl",
                    "{\"id\":\"s1\",\"text\":\"x\",\"facts\":[]}\n{\"id\":\"s2\",\"text\":\"y\",\"facts\":[]}\n");
  EvalConfig e;
  e.gold = dir / "gold.jsonl";
  e.pred = dir / "empty.jsonl";
  std::ostringstream console;
  const auto r = cmd_eval(e, console);
  CHECK(r.micro.precision == 0.0);
  CHECK(r.micro.recall == 0.0);
  CHECK(r.micro.f1 == 0.0);
  CHECK(r.per_sample.size() == 2);
  CHECK(r.label == "empty");

  write_file_atomic(dir / "stranger.jsonl", "{\"id\":\"zz\",\"text\":\"x\",\"facts\":[]}\n");
  e.pred = dir / "stranger.jsonl";
  CHECK(kind_of([&] { cmd_eval(e, console); }) == ErrorKind::IdMismatch);
}

TEST_CASE("repro command") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.runs = 3;
  std::ostringstream log, console;
  cmd_extract(c, log);
  CHECK(cmd_repro(c.out, dir / "repro.json", console).corpus_score == 1.0);
  CHECK(console.str().find("100.00%") != std::string::npos);

  // One sample, runs "abc" and "abd".
  ExtractionRecord rec;
  rec.id = "one";
  rec.text = "t";
  rec.prompt_hash = "h";
  rec.model = "m";
  rec.n_runs = 2;
  rec.runs = {{0, "abc", {}, {}}, {1, "abd", {}, {}}};
  write_file_atomic(dir / "pair.jsonl", rec.to_jsonl() + "\n");
  std::ostringstream pc;
  CHECK(cmd_repro(dir / "pair.jsonl", std::nullopt, pc).corpus_score == doctest::Approx(2.0 / 3.0));
  CHECK(pc.str().find("66.67%") != std::string::npos);

  c.runs = 1;
  cmd_extract(c, log);
  CHECK(kind_of([&] { cmd_repro(c.out, std::nullopt, console); }) == ErrorKind::TooFewRuns);
}

TEST_CASE("report command") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  c.runs = 2;
  std::ostringstream log, console;
  cmd_extract(c, log);
  EvalConfig e;
  e.gold = c.dataset;
  e.pred = c.out;
  e.out = dir / "exact.json";
  cmd_eval(e, console);
  e.metric = "soft";
  e.sim = eval::SimilarityKind::TrigramCosine;
  e.out = dir / "soft.json";
  cmd_eval(e, console);
  e.ignore_case = true;
  e.out = dir / "soft_ci.json";
  cmd_eval(e, console);
  cmd_repro(c.out, dir / "repro.json", console);

  auto count = [](const std::string& s, const std::string& n) {
    size_t k = 0;
    for (size_t p = s.find(n); p != std::string::npos; p = s.find(n, p + 1)) ++k;
    return k;
  };
  SUBCASE("one exact report") {
    const std::string md = cmd_report({dir / "exact.json"}, std::nullopt);
    CHECK(count(md, "| Model |") == 1);
    CHECK(count(md, "| gpt-3.5-turbo |") == 1);
  }
  SUBCASE("exact plus soft") {
    const std::string md = cmd_report({dir / "exact.json", dir / "soft.json"}, dir / "r.md");
    CHECK(count(md, "| Model |") == 2);
    CHECK(read_file(dir / "r.md") == md);
  }
  SUBCASE("clashing params are not merged") {
    const std::string md = cmd_report({dir / "soft.json", dir / "soft_ci.json"}, std::nullopt);
    CHECK(count(md, "| Model |") == 2);
    CHECK(md.find("Note:") != std::string::npos);
  }
  SUBCASE("repro reports get their own table") {
    const std::string md = cmd_report({dir / "exact.json", dir / "repro.json"}, std::nullopt);
    CHECK(md.find("| Model | Reproducibility |") != std::string::npos);
    CHECK(md.find("100.00%") != std::string::npos);
  }
  SUBCASE("no inputs") {
    CHECK(kind_of([&] { cmd_report({}, std::nullopt); }) == ErrorKind::EmptyInput);
  }
}

TEST_CASE("fixtures command feeds the replay backend") {
  test::TempDir dir;
  ExtractConfig c = base_config(dir);
  write_file_atomic(dir / "responses.jsonl",
                    R"J({"id":"s1","runs":["(Barack Obama | educated at | Harvard University)","x"]})J"
                    "\n"
                    R"({"id":"s2","runs":["a","b"]})"
                    "\n"
                    R"({"id":"s3","runs":["c","d"]})"
                    "\n");
  FixturesConfig f;
  f.responses = dir / "responses.jsonl";
  f.dataset = c.dataset;
  f.ontology = c.ontology;
  f.exemplar = c.exemplar;
  f.out = dir / "replay";
  f.recorded_at = "fixed";
  CHECK(cmd_fixtures(f) == 6);

  c.backend = BackendKind::Replay;
  c.fixtures = f.out;
  c.runs = 2;
  std::ostringstream log;
  CHECK(cmd_extract(c, log).errors == 0);
  const auto records = load_records(c.out);
  CHECK(records[0].runs[1].raw_text == "x");
  CHECK(records[2].runs[0].raw_text == "c");
}

TEST_CASE("records round-trip") {
  ExtractionRecord r;
  r.id = "a";
  r.text = "t";
  r.prompt_hash = "h";
  r.model = "m";
  r.temperature = 0.5;
  r.n_runs = 1;
  RunRecord run;
  run.raw_text = "(a | r | b)\njunk";
  run.outcome.facts = {HyperFact("a", "r", "b")};
  run.outcome.diagnostics = {{2, Severity::Skip, ParseReason::NotAFactLine, "junk"}};
  run.latency_us = 12;
  r.runs = {run};
  const ExtractionRecord back = ExtractionRecord::from_json(json::parse(r.to_jsonl()), "t");
  CHECK(back.to_jsonl() == r.to_jsonl());
  CHECK(is_record_line(json::parse(r.to_jsonl())));
  CHECK_FALSE(is_record_line(json{{"id", "a"}, {"facts", json::array()}}));
}
