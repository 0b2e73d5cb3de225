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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hrex/cli/commands.hpp"
#include "hrex/error.hpp"
#include "hrex/version.hpp"

namespace {

using namespace hrex;
using namespace hrex::cli;
namespace fs = std::filesystem;

std::optional<fs::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

void add_params(CLI::App* cmd, CompletionParams& params, double& timeout_s) {
  cmd->add_option("--model", params.model, "Model name")->capture_default_str();
  cmd->add_option("--temperature", params.temperature, "Sampling temperature")
      ->capture_default_str();
  cmd->add_option("--max-tokens", params.max_tokens, "Completion token limit")
      ->capture_default_str();
  cmd->add_option("--timeout", timeout_s, "Per-request timeout in seconds")->capture_default_str();
}

std::chrono::milliseconds seconds_to_ms(double s) {
  return std::chrono::milliseconds(static_cast<long long>(s * 1000.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyper-relational fact extraction and evaluation"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // convert
  auto* convert = app.add_subcommand("convert", "Convert a raw dataset to sentence samples");
  auto* convert_hyperred = convert->add_subcommand("hyperred", "Convert the HyperRED release");
  convert->require_subcommand(1);
  std::string conv_in, conv_out, conv_mapping;
  convert_hyperred->add_option("--in", conv_in, "Raw JSON or JSONL file")->required();
  convert_hyperred->add_option("--out", conv_out, "Output JSONL")->required();
  convert_hyperred->add_option("--mapping", conv_mapping, "Field mapping JSON");

  // extract
  auto* extract = app.add_subcommand("extract", "Run the extraction pipeline");
  ExtractConfig ex;
  std::string ex_dataset, ex_ontology = HREX_DEFAULT_ONTOLOGY, ex_exemplar = HREX_DEFAULT_EXEMPLAR;
  std::string ex_backend = "http", ex_fixtures, ex_cache, ex_out, ex_manifest;
  double ex_timeout = 60.0;
  size_t ex_subset = 0;
  extract->add_option("--dataset", ex_dataset, "Sentence samples JSONL")->required();
  extract->add_option("--ontology", ex_ontology, "Ontology JSON")->capture_default_str();
  extract->add_option("--exemplar", ex_exemplar, "Worked example JSON")->capture_default_str();
  extract->add_option("--backend", ex_backend, "http, replay or mock")
      ->check(CLI::IsMember({"http", "replay", "mock"}))
      ->capture_default_str();
  extract->add_option("--fixtures", ex_fixtures, "Replay directory");
  extract->add_option("--mock-text", ex.mock_text, "Fixed completion for the mock backend");
  extract->add_option("--runs", ex.runs, "Completions per sentence")->capture_default_str();
  add_params(extract, ex.params, ex_timeout);
  extract->add_option("--cache", ex_cache, "Response cache directory");
  extract->add_option("--out", ex_out, "Records JSONL")->required();
  extract->add_option("--manifest", ex_manifest, "Run manifest path");
  extract->add_option("--jobs", ex.jobs, "Worker threads")->capture_default_str();
  extract->add_option("--max-inflight", ex.max_in_flight, "Concurrent backend requests")
      ->capture_default_str();
  extract->add_flag("--strict", ex.strict, "Drop facts outside the ontology");
  auto* subset_opt = extract->add_option("--subset", ex_subset, "Sample this many sentences");
  extract->add_option("--seed", ex.seed, "Seed for --subset")->capture_default_str();
  extract->add_flag("--record-timing", ex.record_timing, "Store per-run latency in records");

  // eval
  auto* evalc = app.add_subcommand("eval", "Score predictions against gold facts");
  EvalConfig ev;
  std::string ev_gold, ev_pred, ev_sim = "trigram", ev_align = "greedy", ev_gran = "fact";
  std::string ev_out, ev_csv;
  evalc->add_option("--metric", ev.metric, "exact or soft")
      ->check(CLI::IsMember({"exact", "soft"}))
      ->capture_default_str();
  evalc->add_option("--sim", ev_sim, "exact, token_f1, trigram or http")->capture_default_str();
  evalc->add_option("--gold", ev_gold, "Gold samples JSONL")->required();
  evalc->add_option("--pred", ev_pred, "Records or prediction JSONL")->required();
  evalc->add_flag("--ignore-case", ev.ignore_case, "Case-insensitive comparison");
  evalc->add_option("--align", ev_align, "greedy or optimal")
      ->check(CLI::IsMember({"greedy", "optimal"}))
      ->capture_default_str();
  evalc->add_option("--granularity", ev_gran, "fact or blob")
      ->check(CLI::IsMember({"fact", "blob"}))
      ->capture_default_str();
  evalc->add_option("--score-run", ev.score_run, "Which run to score")->capture_default_str();
  evalc->add_option("--label", ev.label, "Row label in tables");
  evalc->add_option("--out", ev_out, "Report JSON");
  evalc->add_option("--csv", ev_csv, "Per-sample CSV");

  // repro
  auto* repro = app.add_subcommand("repro", "Run-to-run reproducibility");
  std::string rp_pred, rp_out;
  repro->add_option("--pred", rp_pred, "Records JSONL")->required();
  repro->add_option("--out", rp_out, "Report JSON");

  // report
  auto* report = app.add_subcommand("report", "Combine reports into markdown tables");
  std::vector<std::string> rep_files;
  std::string rep_out;
  report->add_option("reports", rep_files, "Report JSON files")->required();
  report->add_option("--out", rep_out, "Markdown output");

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "Build a replay directory from responses");
  FixturesConfig fx;
  std::string fx_responses, fx_dataset, fx_ontology = HREX_DEFAULT_ONTOLOGY,
                            fx_exemplar = HREX_DEFAULT_EXEMPLAR, fx_out;
  double fx_timeout = 60.0;
  fx.recorded_at = "1970-01-01T00:00:00Z";
  fixtures->add_option("--responses", fx_responses, "JSONL of {id, runs}")->required();
  fixtures->add_option("--dataset", fx_dataset, "Sentence samples JSONL")->required();
  fixtures->add_option("--ontology", fx_ontology, "Ontology JSON")->capture_default_str();
  fixtures->add_option("--exemplar", fx_exemplar, "Worked example JSON")->capture_default_str();
  add_params(fixtures, fx.params, fx_timeout);
  fixtures->add_option("--out", fx_out, "Replay directory")->required();
  fixtures->add_option("--recorded-at", fx.recorded_at, "Timestamp stored in entries")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert_hyperred->parsed()) {
      const ConversionStats stats = cmd_convert(conv_in, conv_out, opt_path(conv_mapping));
      std::cout << stats.to_json() << "\n";
      return kExitOk;
    }
    if (extract->parsed()) {
      ex.dataset = ex_dataset;
      ex.ontology = ex_ontology;
      ex.exemplar = ex_exemplar;
      ex.backend = backend_kind_from_string(ex_backend);
      ex.fixtures = opt_path(ex_fixtures);
      ex.cache = opt_path(ex_cache);
      ex.out = ex_out;
      ex.manifest = opt_path(ex_manifest);
      ex.params.timeout = seconds_to_ms(ex_timeout);
      if (subset_opt->count() > 0) ex.subset = ex_subset;
      const ExtractSummary s = cmd_extract(ex, std::cerr);
      std::cerr << s.samples << " samples, " << s.errors << " errors\n";
      return s.exit_code;
    }
    if (evalc->parsed()) {
      ev.gold = ev_gold;
      ev.pred = ev_pred;
      ev.sim = eval::similarity_kind_from_string(ev_sim);
      ev.alignment = ev_align == "optimal" ? eval::Alignment::Optimal : eval::Alignment::Greedy;
      ev.granularity = ev_gran == "blob" ? Granularity::Blob : Granularity::Fact;
      ev.out = opt_path(ev_out);
      ev.csv = opt_path(ev_csv);
      cmd_eval(ev, std::cout);
      return kExitOk;
    }
    if (repro->parsed()) {
      cmd_repro(rp_pred, opt_path(rp_out), std::cout);
      return kExitOk;
    }
    if (report->parsed()) {
      std::vector<fs::path> paths(rep_files.begin(), rep_files.end());
      const std::string md = cmd_report(paths, opt_path(rep_out));
      if (rep_out.empty()) std::cout << md;
      return kExitOk;
    }
    if (fixtures->parsed()) {
      fx.responses = fx_responses;
      fx.dataset = fx_dataset;
      fx.ontology = fx_ontology;
      fx.exemplar = fx_exemplar;
      fx.out = fx_out;
      fx.params.timeout = seconds_to_ms(fx_timeout);
      std::cerr << cmd_fixtures(fx) << " entries written to " << fx_out << "\n";
      return kExitOk;
    }
  } catch (const hrex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}
