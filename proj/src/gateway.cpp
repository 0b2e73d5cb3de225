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

#include "hrex/gateway.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <thread>

#include "hrex/error.hpp"
#include "hrex/hash.hpp"
#include "hrex/http.hpp"
#include "hrex/io.hpp"
#include "hrex/json_codec.hpp"

namespace hrex {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::Http: return "http";
    case BackendKind::Replay: return "replay";
    case BackendKind::Mock: return "mock";
  }
  return "unknown";
}

BackendKind backend_kind_from_string(std::string_view name) {
  if (name == "http") return BackendKind::Http;
  if (name == "replay") return BackendKind::Replay;
  if (name == "mock") return BackendKind::Mock;
  throw Error(ErrorKind::InvalidArgument, "unknown backend: " + std::string(name));
}

void CompletionParams::validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "temperature must be in [0, 2]");
  }
  if (max_tokens < 1) throw Error(ErrorKind::InvalidArgument, "max_tokens must be >= 1");
  if (model.empty()) throw Error(ErrorKind::InvalidArgument, "model is empty");
  if (timeout.count() <= 0) throw Error(ErrorKind::InvalidArgument, "timeout must be positive");
}

std::string cache_key(std::string_view model, double temperature, std::string_view prompt_hash,
                      size_t run_index) {
  char temp[64];
  std::snprintf(temp, sizeof temp, "%.6f", temperature);
  const std::string run = std::to_string(run_index);
  return sha256_hex_fields({model, temp, prompt_hash, run});
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Mock

MockBackend::MockBackend(std::string text, std::chrono::milliseconds delay)
    : responder_([text = std::move(text)](const RenderedPrompt&, const std::string&) { return text; }),
      delay_(delay) {}

MockBackend::MockBackend(Responder responder, std::chrono::milliseconds delay)
    : responder_(std::move(responder)), delay_(delay) {}

std::string MockBackend::complete(const RenderedPrompt& prompt, const CompletionParams&,
                                  const std::string& key) {
  ++invocations_;
  const size_t now = ++active_;
  size_t peak = max_concurrent_.load();
  while (now > peak && !max_concurrent_.compare_exchange_weak(peak, now)) {
  }
  if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
  std::string out;
  try {
    out = responder_(prompt, key);
  } catch (...) {
    --active_;
    throw;
  }
  --active_;
  return out;
}

// Replay

ReplayBackend::ReplayBackend(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string ReplayBackend::complete(const RenderedPrompt&, const CompletionParams&,
                                    const std::string& key) {
  const std::filesystem::path path = dir_ / (key + ".json");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw Error(ErrorKind::ReplayMiss, key);
  return CacheEntry::from_json(read_file(path), path.string()).raw_text;
}

// HTTP

HttpBackend::HttpBackend(std::string base_url, std::string api_key)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)) {
  if (api_key_.empty()) throw Error(ErrorKind::AuthMissing, "HREX_API_KEY");
}

std::unique_ptr<HttpBackend> HttpBackend::from_env() {
  const char* key = std::getenv("HREX_API_KEY");
  if (key == nullptr || *key == '\0') throw Error(ErrorKind::AuthMissing, "HREX_API_KEY");
  const char* base = std::getenv("HREX_API_BASE");
  return std::make_unique<HttpBackend>(
      base != nullptr && *base != '\0' ? base : "https://api.openai.com/v1", key);
}

std::string HttpBackend::complete(const RenderedPrompt& prompt, const CompletionParams& params,
                                  const std::string&) {
  json body = {{"model", params.model},
               {"temperature", params.temperature},
               {"max_tokens", params.max_tokens},
               {"messages",
                json::array({{{"role", "system"}, {"content", prompt.system_text}},
                             {{"role", "user"}, {"content", prompt.user_text}}})}};
  const std::map<std::string, std::string> headers = {
      {"Authorization", "Bearer " + api_key_}, {"api-key", api_key_}};
  const HttpReply reply =
      post_json(base_url_, "/chat/completions", headers, body.dump(), params.timeout);

  if (reply.status == 401 || reply.status == 403) {
    throw Error(ErrorKind::AuthMissing, "status " + std::to_string(reply.status));
  }
  if (reply.status == 429) {
    double retry_after = -1.0;
    if (auto it = reply.headers.find("retry-after"); it != reply.headers.end()) {
      char* end = nullptr;
      const double v = std::strtod(it->second.c_str(), &end);
      if (end != it->second.c_str() && v >= 0) retry_after = v;
    }
    throw RateLimitedError("status 429", retry_after);
  }
  if (reply.status == 408 || reply.status == 504) {
    throw Error(ErrorKind::BackendTimeout, "status " + std::to_string(reply.status));
  }
  if (reply.status < 200 || reply.status >= 300) {
    throw Error(ErrorKind::BackendFailure, "status " + std::to_string(reply.status) + ": " +
                                               reply.body.substr(0, 200));
  }
  try {
    const json doc = json::parse(reply.body);
    const json& content = doc.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BackendFailure, std::string("malformed response: ") + e.what());
  }
}

// Cache

std::string CacheEntry::to_json() const {
  json doc = {{"raw_text", raw_text}, {"model", model}, {"recorded_at", recorded_at}};
  return doc.dump(2) + "\n";
}

CacheEntry CacheEntry::from_json(std::string_view text, const std::string& where) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaViolation, where + ": " + e.what());
  }
  CacheEntry e;
  e.raw_text = require_string(doc, "raw_text", where);
  if (auto it = doc.find("model"); it != doc.end() && it->is_string()) e.model = *it;
  if (auto it = doc.find("recorded_at"); it != doc.end() && it->is_string()) e.recorded_at = *it;
  return e;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create cache dir " + dir_.string());
}

std::filesystem::path ResponseCache::path_for(const std::string& key) const {
  return dir_ / (key + ".json");
}

std::optional<CacheEntry> ResponseCache::get(const std::string& key) const {
  const auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  return CacheEntry::from_json(read_file(path), path.string());
}

void ResponseCache::put(const std::string& key, const CacheEntry& entry) const {
  write_file_atomic(path_for(key), entry.to_json());
}

ResponseCache::KeyLock::KeyLock(const ResponseCache& cache, const std::string& key) {
  const auto path = cache.dir_ / (key + ".lock");
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error(ErrorKind::IoError, "cannot open lock " + path.string());
  while (::flock(fd_, LOCK_EX) != 0) {
    if (errno != EINTR) {
      ::close(fd_);
      throw Error(ErrorKind::IoError, "flock failed on " + path.string());
    }
  }
}

ResponseCache::KeyLock::~KeyLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

// Limiter

InFlightLimiter::InFlightLimiter(size_t limit) : limit_(limit == 0 ? 1 : limit) {}

void InFlightLimiter::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_use_ < limit_; });
  ++in_use_;
}

void InFlightLimiter::release() {
  {
    std::lock_guard lock(mu_);
    --in_use_;
  }
  cv_.notify_one();
}

// Gateway

Gateway::Gateway(std::shared_ptr<CompletionBackend> backend,
                 std::optional<std::filesystem::path> cache_dir, size_t max_in_flight,
                 RetryPolicy retry, Sleeper sleeper)
    : backend_(std::move(backend)),
      limiter_(max_in_flight),
      retry_(retry),
      sleeper_(sleeper ? std::move(sleeper)
                       : Sleeper([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); })) {
  if (!backend_) throw Error(ErrorKind::InvalidArgument, "no backend configured");
  if (cache_dir) cache_.emplace(*cache_dir);
}

std::string Gateway::call_backend(const RenderedPrompt& prompt, const CompletionParams& params,
                                  const std::string& key) {
  double delay_ms = static_cast<double>(retry_.base_delay.count());
  for (int attempt = 1;; ++attempt) {
    try {
      limiter_.acquire();
      struct Release {
        InFlightLimiter& l;
        ~Release() { l.release(); }
      } release{limiter_};
      ++backend_calls_;
      return backend_->complete(prompt, params, key);
    } catch (const RateLimitedError& e) {
      if (attempt >= retry_.max_attempts) throw;
      double wait = std::min(delay_ms, static_cast<double>(retry_.max_delay.count()));
      if (e.retry_after() >= 0) wait = std::max(wait, e.retry_after() * 1000.0);
      sleeper_(std::chrono::milliseconds(static_cast<long long>(std::llround(wait))));
      delay_ms *= retry_.multiplier;
    }
  }
}

CompletionResult Gateway::complete(const RenderedPrompt& prompt, const CompletionParams& params,
                                   size_t run_index) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::string key = cache_key(params.model, params.temperature, prompt.prompt_hash, run_index);
  CompletionResult result;
  result.backend = backend_->kind();

  if (cache_) {
    ResponseCache::KeyLock lock(*cache_, key);
    if (auto hit = cache_->get(key)) {
      result.raw_text = std::move(hit->raw_text);
      result.cached = true;
    } else {
      result.raw_text = call_backend(prompt, params, key);
      cache_->put(key, {result.raw_text, params.model, utc_timestamp()});
    }
  } else {
    result.raw_text = call_backend(prompt, params, key);
  }
  result.latency = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

std::vector<CompletionResult> Gateway::complete_runs(const RenderedPrompt& prompt,
                                                     const CompletionParams& params,
                                                     size_t n_runs) {
  if (n_runs < 1) throw Error(ErrorKind::InvalidArgument, "n_runs must be >= 1");
  std::vector<CompletionResult> results;
  results.reserve(n_runs);
  for (size_t run = 0; run < n_runs; ++run) {
    try {
      results.push_back(complete(prompt, params, run));
    } catch (const Error& e) {
      throw Error(e.kind(), "run " + std::to_string(run) + ": " + e.detail());
    }
  }
  return results;
}

}  // namespace hrex
