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

#include <omp.h>

#include <exception>
#include <mutex>

#include "hrex/eval/kernels.hpp"
#include "hrex/eval/similarity.hpp"

namespace hrex::eval {

namespace detail {
double mean_pairwise(const std::vector<std::string>& runs);
}

namespace {

// Exceptions must not leave an OpenMP region; the first one is kept and
// rethrown after the loop.
class FirstError {
 public:
  template <typename F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

}  // namespace

namespace parallel {

SimMatrix similarity_matrix(const std::vector<std::string>& preds,
                            const std::vector<std::string>& golds, const SimilarityBackend& sim) {
  SimMatrix m(preds.size(), golds.size());
  const long rows = static_cast<long>(preds.size());
  const long cols = static_cast<long>(golds.size());
  FirstError err;
#pragma omp parallel for collapse(2) schedule(dynamic, 16)
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      err.run([&] { m.at(r, c) = sim.score(preds[r], golds[c]); });
    }
  }
  err.rethrow();
  return m;
}

std::vector<double> pairwise_mean_similarity(const std::vector<std::vector<std::string>>& runs) {
  std::vector<double> out(runs.size());
  const long n = static_cast<long>(runs.size());
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    err.run([&] { out[i] = detail::mean_pairwise(runs[i]); });
  }
  err.rethrow();
  return out;
}

std::vector<PRF> exact_match_batch(std::span<const SamplePair> samples, bool ignore_case) {
  std::vector<PRF> out(samples.size());
  const long n = static_cast<long>(samples.size());
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    err.run([&] {
      out[i] = exact_match({samples[i].gold.begin(), samples[i].gold.end()},
                           {samples[i].pred.begin(), samples[i].pred.end()}, ignore_case);
    });
  }
  err.rethrow();
  return out;
}

std::vector<PRF> soft_match_batch(std::span<const SamplePair> samples, const SimilarityBackend& sim,
                                  const SoftOptions& options) {
  std::vector<PRF> out(samples.size());
  const long n = static_cast<long>(samples.size());
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    err.run([&] {
      out[i] = soft_match({samples[i].gold.begin(), samples[i].gold.end()},
                          {samples[i].pred.begin(), samples[i].pred.end()}, sim, options);
    });
  }
  err.rethrow();
  return out;
}

}  // namespace parallel
}  // namespace hrex::eval
