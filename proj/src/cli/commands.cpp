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

#include "hrex/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "hrex/cli/records.hpp"
#include "hrex/error.hpp"
#include "hrex/eval/kernels.hpp"
#include "hrex/hash.hpp"
#include "hrex/io.hpp"
#include "hrex/ontology.hpp"
#include "hrex/parser.hpp"
#include "hrex/prompt.hpp"
#include "hrex/text.hpp"
#include "hrex/version.hpp"

namespace hrex::cli {

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::shared_ptr<CompletionBackend> make_backend(const ExtractConfig& c) {
  if (c.backend_override) return c.backend_override;
  switch (c.backend) {
    case BackendKind::Mock:
      return std::make_shared<MockBackend>(c.mock_text);
    case BackendKind::Replay:
      if (!c.fixtures) throw Error(ErrorKind::InvalidArgument, "--fixtures is required for replay");
      return std::make_shared<ReplayBackend>(*c.fixtures);
    case BackendKind::Http:
      return std::shared_ptr<CompletionBackend>(HttpBackend::from_env());
  }
  throw Error(ErrorKind::InvalidArgument, "unknown backend");
}

ExtractionRecord extract_one(const SentenceSample& sample, const PromptSpec& spec,
                             const Ontology& ont, Gateway& gateway, const ExtractConfig& c) {
  ExtractionRecord rec;
  rec.id = sample.id;
  rec.text = sample.text;
  rec.model = c.params.model;
  rec.temperature = c.params.temperature;
  rec.n_runs = c.runs;
  try {
    const RenderedPrompt prompt = render(spec, sample.text);
    rec.prompt_hash = prompt.prompt_hash;
    for (size_t run = 0; run < c.runs; ++run) {
      CompletionResult result;
      try {
        result = gateway.complete(prompt, c.params, run);
      } catch (const Error& e) {
        throw Error(e.kind(), "run " + std::to_string(run) + ": " + e.detail());
      }
      RunRecord r;
      r.run_index = run;
      r.outcome = parse_completion(result.raw_text, ont, c.strict);
      r.raw_text = std::move(result.raw_text);
      if (c.record_timing) r.latency_us = result.latency.count();
      rec.runs.push_back(std::move(r));
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

ConversionStats cmd_convert(const std::filesystem::path& in, const std::filesystem::path& out,
                            const std::optional<std::filesystem::path>& mapping) {
  const FieldMapping m = mapping ? load_field_mapping(*mapping) : FieldMapping{};
  return convert_hyperred(in, m, out);
}

ExtractSummary cmd_extract(const ExtractConfig& c, std::ostream& log) {
  const std::string started_at = utc_timestamp();
  c.params.validate();
  if (c.runs < 1) throw Error(ErrorKind::InvalidArgument, "--runs must be >= 1");

  const Ontology ont = load_ontology(c.ontology);
  const CoTExemplar exemplar = load_exemplar(c.exemplar);
  const PromptSpec spec = build_prompt_spec(ont, exemplar);
  const std::string dataset_bytes = read_file(c.dataset);
  std::vector<SentenceSample> samples = parse_samples(dataset_bytes, c.dataset.string());
  if (c.subset) samples = sample_subset(samples, *c.subset, c.seed);

  Gateway gateway(make_backend(c), c.cache, c.max_in_flight);

  std::ofstream out(c.out, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + c.out.string());

  // Workers fill `done` out of order; this thread writes strictly in
  // dataset order and flushes after every line.
  const size_t n = samples.size();
  const size_t jobs = std::max<size_t>(1, std::min(c.jobs, std::max<size_t>(1, n)));
  const size_t window = 4 * jobs;
  std::vector<std::optional<ExtractionRecord>> done(n);
  std::mutex mu;
  std::condition_variable cv;
  size_t written = 0;
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return i < written + window; });
      }
      ExtractionRecord rec = extract_one(samples[i], spec, ont, gateway, c);
      {
        std::lock_guard lock(mu);
        done[i] = std::move(rec);
      }
      cv.notify_all();
    }
  };

  ExtractSummary summary;
  summary.samples = n;
  {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (size_t i = 0; i < n; ++i) {
      ExtractionRecord rec;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return done[i].has_value(); });
        rec = std::move(*done[i]);
        done[i].reset();
        written = i + 1;
      }
      cv.notify_all();
      if (rec.error) {
        ++summary.errors;
        log << "sample " << rec.id << ": " << *rec.error << "\n";
      }
      out << rec.to_jsonl() << '\n';
      out.flush();
    }
  }
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + c.out.string());
  summary.exit_code = summary.errors > 0 ? kExitSampleErrors : kExitOk;

  RunManifest manifest;
  manifest.tool_version = kToolVersion;
  manifest.started_at = started_at;
  manifest.finished_at = utc_timestamp();
  manifest.samples = summary.samples;
  manifest.errors = summary.errors;
  manifest.config = {
      {"ontology", {{"name", ont.name()}, {"version", ont.version()}, {"hash", ont.content_hash()}}},
      {"exemplar_hash", exemplar_hash(exemplar)},
      {"system_prompt_hash", sha256_hex(spec.system_text)},
      {"backend", std::string(to_string(gateway.backend_kind()))},
      {"params",
       {{"model", c.params.model},
        {"temperature", c.params.temperature},
        {"max_tokens", c.params.max_tokens},
        {"timeout_ms", c.params.timeout.count()}}},
      {"n_runs", c.runs},
      {"dataset", {{"path", c.dataset.string()}, {"hash", sha256_hex(dataset_bytes)}}},
      {"subset", c.subset ? json(*c.subset) : json()},
      {"seed", c.seed},
      {"strict", c.strict}};
  write_file_atomic(c.manifest.value_or(default_manifest_path(c.out)), manifest.to_json());
  return summary;
}

namespace {

struct Predictions {
  std::vector<std::pair<std::string, std::vector<HyperFact>>> by_sample;
  std::string model;
};

Predictions load_predictions(const std::filesystem::path& path, size_t score_run) {
  Predictions preds;
  const std::string content = read_file(path);
  std::set<std::string> ids;
  size_t line_no = 0;
  for (const std::string& line : split_lines(content)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
    }
    std::string id;
    std::vector<HyperFact> facts;
    if (is_record_line(doc)) {
      ExtractionRecord rec = ExtractionRecord::from_json(doc, where);
      if (score_run >= rec.n_runs) {
        throw Error(ErrorKind::InvalidArgument, where + ": --score-run " +
                                                    std::to_string(score_run) + " but only " +
                                                    std::to_string(rec.n_runs) + " run(s)");
      }
      if (preds.model.empty()) preds.model = rec.model;
      id = rec.id;
      for (auto& run : rec.runs) {
        if (run.run_index == score_run) facts = std::move(run.outcome.facts);
      }
    } else {
      id = require_string(doc, "id", where);
      if (auto it = doc.find("facts"); it != doc.end() && !it->is_null()) {
        facts = facts_from_json(*it, where + ".facts");
      }
    }
    if (!ids.insert(id).second) throw Error(ErrorKind::DuplicateId, id);
    preds.by_sample.emplace_back(std::move(id), std::move(facts));
  }
  return preds;
}

json load_provenance(const std::filesystem::path& records) {
  const auto path = default_manifest_path(records);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return json();
  return RunManifest::from_json(read_file(path), path.string()).config;
}

void print_table(std::ostream& os, const eval::EvalReport& r) {
  os << "| Model | Precision | Recall | F1 |\n";
  os << "|---|---|---|---|\n";
  os << "| " << r.label << " (micro) | " << fixed(r.micro.precision) << " | "
     << fixed(r.micro.recall) << " | " << fixed(r.micro.f1) << " |\n";
  os << "| " << r.label << " (macro) | " << fixed(r.macro.precision) << " | "
     << fixed(r.macro.recall) << " | " << fixed(r.macro.f1) << " |\n";
}

}  // namespace

eval::EvalReport cmd_eval(const EvalConfig& c, std::ostream& console) {
  if (c.metric != "exact" && c.metric != "soft") throw Error(ErrorKind::MetricUnknown, c.metric);

  const std::vector<SentenceSample> gold = load_samples(c.gold);
  std::map<std::string, const SentenceSample*> gold_by_id;
  for (const auto& s : gold) gold_by_id[s.id] = &s;

  const Predictions preds = load_predictions(c.pred, c.score_run);
  std::vector<eval::SamplePair> pairs;
  pairs.reserve(preds.by_sample.size());
  for (const auto& [id, facts] : preds.by_sample) {
    auto it = gold_by_id.find(id);
    if (it == gold_by_id.end()) throw Error(ErrorKind::IdMismatch, id + " is not in the gold file");
    pairs.push_back({it->second->gold, facts});
  }

  eval::EvalReport report;
  report.metric = c.metric;
  report.label = !c.label.empty()      ? c.label
                 : !preds.model.empty() ? preds.model
                                        : c.pred.stem().string();
  report.params = {{"ignore_case", c.ignore_case},
                   {"score_run", c.score_run},
                   {"dedup", true},
                   {"gold", c.gold.filename().string()}};

  std::vector<eval::PRF> scores;
  if (c.metric == "exact") {
    scores = eval::parallel::exact_match_batch(pairs, c.ignore_case);
  } else {
    std::shared_ptr<eval::SimilarityBackend> sim =
        c.sim_override ? c.sim_override : std::shared_ptr<eval::SimilarityBackend>(eval::make_similarity(c.sim));
    report.params["sim"] = std::string(eval::to_string(sim->kind()));
    report.params["align"] = c.alignment == eval::Alignment::Greedy ? "greedy" : "optimal";
    report.params["granularity"] = c.granularity == Granularity::Fact ? "fact" : "blob";
    if (c.granularity == Granularity::Fact) {
      scores = eval::parallel::soft_match_batch(pairs, *sim, {c.alignment, c.ignore_case});
    } else {
      for (const auto& p : pairs) {
        scores.push_back(eval::soft_match_blob({p.gold.begin(), p.gold.end()},
                                               {p.pred.begin(), p.pred.end()}, *sim,
                                               c.ignore_case));
      }
    }
  }

  for (size_t i = 0; i < scores.size(); ++i) {
    report.per_sample.push_back({preds.by_sample[i].first, scores[i]});
  }
  if (scores.empty()) throw Error(ErrorKind::EmptyInput, c.pred.string() + " has no predictions");
  report.micro = eval::aggregate(scores, eval::Aggregation::Micro);
  report.macro = eval::aggregate(scores, eval::Aggregation::Macro);
  report.provenance = load_provenance(c.pred);

  if (c.out) write_file_atomic(*c.out, report.to_json());
  if (c.csv) write_file_atomic(*c.csv, report.to_csv());
  console << (c.metric == "exact" ? "Exact match" : "Soft match") << " over "
          << report.per_sample.size() << " samples\n";
  print_table(console, report);
  return report;
}

eval::ReproReport cmd_repro(const std::filesystem::path& records_path,
                            const std::optional<std::filesystem::path>& out, std::ostream& console) {
  const std::vector<ExtractionRecord> records = load_records(records_path);
  std::vector<eval::RunSet> sets;
  std::string label;
  size_t skipped = 0;
  for (const auto& r : records) {
    if (r.error) {
      ++skipped;
      continue;
    }
    if (label.empty()) label = r.model;
    eval::RunSet s{r.id, {}};
    for (const auto& run : r.runs) s.runs.push_back(run.raw_text);
    sets.push_back(std::move(s));
  }
  const eval::ReproReport report = eval::reproducibility(sets);
  if (out) write_file_atomic(*out, eval::repro_report_to_json(report, label, load_provenance(records_path)));
  console << "Reproducibility: " << fixed(100.0 * report.corpus_score, 2) << "% over "
          << report.per_sample.size() << " samples (" << report.n_runs << " runs each)";
  if (skipped > 0) console << ", " << skipped << " errored sample(s) left out";
  console << "\n";
  return report;
}

std::string cmd_report(const std::vector<std::filesystem::path>& paths,
                       const std::optional<std::filesystem::path>& out) {
  if (paths.empty()) throw Error(ErrorKind::EmptyInput, "no reports given");

  struct Row {
    std::string label;
    std::string metric;
    json params;
    json provenance;
    std::optional<eval::EvalReport> eval;
    std::optional<eval::ReproReport> repro;
    std::string source;
  };
  std::vector<Row> rows;
  for (const auto& p : paths) {
    const std::string text = read_file(p);
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::SchemaViolation, p.string() + ": " + e.what());
    }
    Row row;
    row.source = p.filename().string();
    if (doc.value("metric", std::string()) == "reproducibility") {
      row.repro = eval::repro_report_from_json(text, p.string(), &row.label, &row.provenance);
      row.metric = "reproducibility";
      row.params = doc.value("params", json::object());
    } else {
      row.eval = eval::EvalReport::from_json(text, p.string());
      row.label = row.eval->label;
      row.metric = row.eval->metric;
      row.params = row.eval->params;
      row.provenance = row.eval->provenance;
    }
    rows.push_back(std::move(row));
  }

  // Families keyed by metric; within a metric, distinct params get their
  // own table and are never merged.
  std::vector<std::string> metric_order;
  std::map<std::string, std::vector<std::string>> param_order;
  std::map<std::pair<std::string, std::string>, std::vector<const Row*>> groups;
  for (const auto& row : rows) {
    const std::string key = row.params.dump();
    if (std::find(metric_order.begin(), metric_order.end(), row.metric) == metric_order.end()) {
      metric_order.push_back(row.metric);
    }
    auto& po = param_order[row.metric];
    if (std::find(po.begin(), po.end(), key) == po.end()) po.push_back(key);
    groups[{row.metric, key}].push_back(&row);
  }

  auto title = [](const std::string& metric) {
    if (metric == "exact") return std::string("Exact match");
    if (metric == "soft") return std::string("Soft match");
    if (metric == "reproducibility") return std::string("Reproducibility");
    return metric;
  };
  auto describe = [](const json& params) {
    std::string s;
    for (auto it = params.begin(); it != params.end(); ++it) {
      if (!s.empty()) s += ", ";
      s += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    return s;
  };

  std::ostringstream md;
  md << "# Extraction evaluation report\n";
  for (const auto& metric : metric_order) {
    const auto& keys = param_order[metric];
    for (const auto& key : keys) {
      const auto& members = groups[{metric, key}];
      const json params = members.front()->params;
      md << "\n## " << title(metric) << "\n\n";
      md << "Parameters: " << describe(params) << "\n\n";
      if (metric == "reproducibility") {
        md << "| Model | Reproducibility |\n|---|---|\n";
        for (const Row* r : members) {
          md << "| " << r->label << " | " << fixed(100.0 * r->repro->corpus_score, 2) << "% |\n";
        }
      } else {
        md << "| Model | Precision | Recall | F1 | Macro P | Macro R | Macro F1 |\n";
        md << "|---|---|---|---|---|---|---|\n";
        for (const Row* r : members) {
          const auto& e = *r->eval;
          md << "| " << r->label << " | " << fixed(e.micro.precision) << " | "
             << fixed(e.micro.recall) << " | " << fixed(e.micro.f1) << " | "
             << fixed(e.macro.precision) << " | " << fixed(e.macro.recall) << " | "
             << fixed(e.macro.f1) << " |\n";
        }
      }
    }
    if (keys.size() > 1) {
      md << "\nNote: " << keys.size() << " tables above share the metric '" << metric
         << "' but were computed with different parameters, so they are not merged.\n";
    }
  }

  md << "\n## Provenance\n\n";
  for (const auto& row : rows) {
    md << "- " << row.source << ": " << title(row.metric) << ", model " << row.label;
    const json& p = row.provenance;
    if (p.is_object()) {
      if (auto it = p.find("backend"); it != p.end()) md << ", backend " << it->get<std::string>();
      if (auto it = p.find("params"); it != p.end() && it->is_object()) {
        md << ", temperature " << it->value("temperature", 0.0);
      }
      if (auto it = p.find("n_runs"); it != p.end()) md << ", runs " << it->dump();
      if (auto it = p.find("ontology"); it != p.end() && it->is_object()) {
        md << ", ontology " << it->value("hash", std::string()).substr(0, 12);
      }
      if (auto it = p.find("exemplar_hash"); it != p.end()) {
        md << ", exemplar " << it->get<std::string>().substr(0, 12);
      }
      if (auto it = p.find("dataset"); it != p.end() && it->is_object()) {
        md << ", dataset " << it->value("hash", std::string()).substr(0, 12);
      }
    } else {
      md << ", no run manifest";
    }
    md << "\n";
  }

  const std::string text = md.str();
  if (out) write_file_atomic(*out, text);
  return text;
}

size_t cmd_fixtures(const FixturesConfig& c) {
  c.params.validate();
  const Ontology ont = load_ontology(c.ontology);
  const PromptSpec spec = build_prompt_spec(ont, load_exemplar(c.exemplar));
  const std::vector<SentenceSample> samples = load_samples(c.dataset);
  std::map<std::string, const SentenceSample*> by_id;
  for (const auto& s : samples) by_id[s.id] = &s;

  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + c.out.string());

  size_t written = 0;
  size_t line_no = 0;
  for (const std::string& line : split_lines(read_file(c.responses))) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = c.responses.string() + ":" + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
    }
    const std::string id = require_string(doc, "id", where);
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error(ErrorKind::IdMismatch, id + " is not in the dataset");
    const RenderedPrompt prompt = render(spec, it->second->text);
    const json& runs = require_field(doc, "runs", where);
    if (!runs.is_array()) throw Error(ErrorKind::SchemaViolation, where + ".runs");
    for (size_t run = 0; run < runs.size(); ++run) {
      if (!runs[run].is_string()) throw Error(ErrorKind::SchemaViolation, where + ".runs");
      const std::string key = cache_key(c.params.model, c.params.temperature, prompt.prompt_hash, run);
      CacheEntry entry{runs[run].get<std::string>(), c.params.model, c.recorded_at};
      write_file_atomic(c.out / (key + ".json"), entry.to_json());
      ++written;
    }
  }
  return written;
}

}  // namespace hrex::cli
