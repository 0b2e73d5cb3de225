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

#include <stdexcept>
#include <string>
#include <string_view>

namespace hrex {

enum class ErrorKind {
  FileUnreadable,
  SchemaViolation,
  DuplicateName,
  DuplicateId,
  SpanOutOfRange,
  SubsetTooLarge,
  ExemplarUnparseable,
  EmptySentence,
  AuthMissing,
  BackendTimeout,
  RateLimited,
  ReplayMiss,
  BackendFailure,
  RunCountMismatch,
  TooFewRuns,
  SimilarityOutOfRange,
  EmptyInput,
  IdMismatch,
  MetricUnknown,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library. `detail` is the offending name,
// key, path or field; what() renders "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

class RateLimitedError : public Error {
 public:
  RateLimitedError(std::string detail, double retry_after_seconds)
      : Error(ErrorKind::RateLimited, std::move(detail)),
        retry_after_(retry_after_seconds) {}

  // Negative when the server did not send a Retry-After header.
  double retry_after() const noexcept { return retry_after_; }

 private:
  double retry_after_;
};

}  // namespace hrex
