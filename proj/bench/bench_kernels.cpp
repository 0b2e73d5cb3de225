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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "hrex/eval/kernels.hpp"
#include "hrex/eval/similarity.hpp"
#include "hrex/fact.hpp"

namespace {

using namespace hrex;
using namespace hrex::eval;

std::string word(std::mt19937_64& rng) {
  static const char* const kWords[] = {"Barack", "Obama", "Harvard", "University", "Palermo",
                                       "Sicily", "Kingdom", "Chicago", "Nobel",    "Prize",
                                       "Physics", "Curie", "Berlin",  "Germany",   "Senate"};
  return kWords[std::uniform_int_distribution<size_t>(0, std::size(kWords) - 1)(rng)];
}

std::string phrase(std::mt19937_64& rng, size_t max_words) {
  std::string s = word(rng);
  const size_t n = std::uniform_int_distribution<size_t>(0, max_words - 1)(rng);
  for (size_t i = 0; i < n; ++i) s += " " + word(rng);
  return s;
}

HyperFact fact(std::mt19937_64& rng) {
  static const char* const kRels[] = {"educated at", "member of", "position held", "capital of"};
  std::vector<std::pair<std::string, std::string>> qs;
  const size_t nq = std::uniform_int_distribution<size_t>(0, 2)(rng);
  for (size_t i = 0; i < nq; ++i) qs.emplace_back(i == 0 ? "start time" : "end time", phrase(rng, 1));
  return HyperFact(phrase(rng, 3), kRels[rng() % 4], phrase(rng, 3), qs);
}

struct Corpus {
  std::vector<std::vector<HyperFact>> gold, pred;
  std::vector<SamplePair> pairs;
  std::vector<std::vector<std::string>> runs;

  explicit Corpus(size_t samples) {
    std::mt19937_64 rng(7);
    for (size_t i = 0; i < samples; ++i) {
      std::vector<HyperFact> g, p;
      for (int k = 0; k < 6; ++k) g.push_back(fact(rng));
      for (int k = 0; k < 6; ++k) p.push_back(k % 2 == 0 ? g[k] : fact(rng));
      gold.push_back(std::move(g));
      pred.push_back(std::move(p));
      std::vector<std::string> r;
      for (int k = 0; k < 5; ++k) {
        std::string text;
        for (int line = 0; line < 4; ++line) text += serialize_fact(fact(rng)) + "\n";
        r.push_back(std::move(text));
      }
      runs.push_back(std::move(r));
    }
    for (size_t i = 0; i < samples; ++i) pairs.push_back({gold[i], pred[i]});
  }
};

const Corpus& corpus() {
  static const Corpus c(2000);
  return c;
}

void BM_SoftMatchSerial(benchmark::State& state) {
  TrigramCosineSimilarity sim;
  for (auto _ : state) benchmark::DoNotOptimize(serial::soft_match_batch(corpus().pairs, sim, {}));
}

void BM_SoftMatchParallel(benchmark::State& state) {
  TrigramCosineSimilarity sim;
  for (auto _ : state) benchmark::DoNotOptimize(parallel::soft_match_batch(corpus().pairs, sim, {}));
}

void BM_ExactMatchSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::exact_match_batch(corpus().pairs, false));
}

void BM_ExactMatchParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parallel::exact_match_batch(corpus().pairs, false));
}

void BM_ReproSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::pairwise_mean_similarity(corpus().runs));
}

void BM_ReproParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parallel::pairwise_mean_similarity(corpus().runs));
}

std::vector<std::string> lines(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(serialize_fact(fact(rng)));
  return out;
}

void BM_MatrixSerial(benchmark::State& state) {
  const auto p = lines(static_cast<size_t>(state.range(0)), 1);
  const auto g = lines(static_cast<size_t>(state.range(0)), 2);
  TrigramCosineSimilarity sim;
  for (auto _ : state) benchmark::DoNotOptimize(serial::similarity_matrix(p, g, sim));
}

void BM_MatrixParallel(benchmark::State& state) {
  const auto p = lines(static_cast<size_t>(state.range(0)), 1);
  const auto g = lines(static_cast<size_t>(state.range(0)), 2);
  TrigramCosineSimilarity sim;
  for (auto _ : state) benchmark::DoNotOptimize(parallel::similarity_matrix(p, g, sim));
}

}  // namespace

BENCHMARK(BM_SoftMatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SoftMatchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExactMatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExactMatchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ReproSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ReproParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MatrixSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MatrixParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
