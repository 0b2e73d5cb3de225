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

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hrex/prompt.hpp"

namespace hrex {

enum class BackendKind { Http, Replay, Mock };

std::string_view to_string(BackendKind kind);
BackendKind backend_kind_from_string(std::string_view name);

struct CompletionParams {
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.0;
  int max_tokens = 1024;
  std::chrono::milliseconds timeout{60000};

  /// Throws InvalidArgument outside temperature [0, 2] or max_tokens < 1.
  void validate() const;
};

struct CompletionResult {
  std::string raw_text;
  BackendKind backend = BackendKind::Mock;
  bool cached = false;
  std::chrono::microseconds latency{0};
};

/// 64 hex digits over (model, temperature, prompt_hash, run_index). The
/// temperature enters as fixed six-decimal text.
std::string cache_key(std::string_view model, double temperature, std::string_view prompt_hash,
                      size_t run_index);

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual BackendKind kind() const = 0;
  // Must be safe to call from several threads at once.
  virtual std::string complete(const RenderedPrompt& prompt, const CompletionParams& params,
                               const std::string& key) = 0;
};

// Returns a constant text, or whatever `responder` returns when set. Counts
// invocations and the peak number of overlapping calls.
class MockBackend : public CompletionBackend {
 public:
  using Responder = std::function<std::string(const RenderedPrompt&, const std::string& key)>;

  explicit MockBackend(std::string text, std::chrono::milliseconds delay = {});
  explicit MockBackend(Responder responder, std::chrono::milliseconds delay = {});

  BackendKind kind() const override { return BackendKind::Mock; }
  std::string complete(const RenderedPrompt& prompt, const CompletionParams& params,
                       const std::string& key) override;

  size_t invocations() const { return invocations_.load(); }
  size_t max_concurrent() const { return max_concurrent_.load(); }

 private:
  Responder responder_;
  std::chrono::milliseconds delay_;
  std::atomic<size_t> invocations_{0};
  std::atomic<size_t> active_{0};
  std::atomic<size_t> max_concurrent_{0};
};

// Serves `<dir>/<key>.json` fixtures. Never touches the network; a missing
// fixture is ReplayMiss.
class ReplayBackend : public CompletionBackend {
 public:
  explicit ReplayBackend(std::filesystem::path dir);

  BackendKind kind() const override { return BackendKind::Replay; }
  std::string complete(const RenderedPrompt& prompt, const CompletionParams& params,
                       const std::string& key) override;

 private:
  std::filesystem::path dir_;
};

// OpenAI-compatible chat completions.
class HttpBackend : public CompletionBackend {
 public:
  HttpBackend(std::string base_url, std::string api_key);
  /// HREX_API_BASE (default https://api.openai.com/v1) and HREX_API_KEY.
  /// Throws AuthMissing when the key is unset or empty.
  static std::unique_ptr<HttpBackend> from_env();

  BackendKind kind() const override { return BackendKind::Http; }
  std::string complete(const RenderedPrompt& prompt, const CompletionParams& params,
                       const std::string& key) override;

 private:
  std::string base_url_;
  std::string api_key_;
};

// On-disk record shared by the response cache and replay fixtures.
struct CacheEntry {
  std::string raw_text;
  std::string model;
  std::string recorded_at;

  std::string to_json() const;
  static CacheEntry from_json(std::string_view text, const std::string& where);
};

// One file per key under `dir`, written by temp file + rename.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const;
  std::optional<CacheEntry> get(const std::string& key) const;
  void put(const std::string& key, const CacheEntry& entry) const;

  // Exclusive advisory lock on `<dir>/<key>.lock`, held for the object's
  // lifetime. Excludes other threads and other processes alike.
  class KeyLock {
   public:
    KeyLock(const ResponseCache& cache, const std::string& key);
    ~KeyLock();
    KeyLock(const KeyLock&) = delete;
    KeyLock& operator=(const KeyLock&) = delete;

   private:
    int fd_ = -1;
  };

 private:
  std::filesystem::path dir_;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_delay{30000};
};

class InFlightLimiter {
 public:
  explicit InFlightLimiter(size_t limit);
  void acquire();
  void release();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  size_t limit_;
  size_t in_use_ = 0;
};

// Cache-first completion front end. At most one backend call happens per
// cache key, and at most `max_in_flight` backend calls overlap.
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  Gateway(std::shared_ptr<CompletionBackend> backend,
          std::optional<std::filesystem::path> cache_dir, size_t max_in_flight = 4,
          RetryPolicy retry = {}, Sleeper sleeper = {});

  CompletionResult complete(const RenderedPrompt& prompt, const CompletionParams& params,
                            size_t run_index);
  /// Runs 0..n_runs-1 in order. Errors are rethrown with "run <i>: " prefixed.
  std::vector<CompletionResult> complete_runs(const RenderedPrompt& prompt,
                                              const CompletionParams& params, size_t n_runs);

  BackendKind backend_kind() const { return backend_->kind(); }
  size_t backend_calls() const { return backend_calls_.load(); }

 private:
  std::string call_backend(const RenderedPrompt& prompt, const CompletionParams& params,
                           const std::string& key);

  std::shared_ptr<CompletionBackend> backend_;
  std::optional<ResponseCache> cache_;
  InFlightLimiter limiter_;
  RetryPolicy retry_;
  Sleeper sleeper_;
  std::atomic<size_t> backend_calls_{0};
};

/// UTC "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace hrex
