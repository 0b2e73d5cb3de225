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

#include "hrex/error.hpp"

namespace hrex {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileUnreadable: return "FileUnreadable";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::SpanOutOfRange: return "SpanOutOfRange";
    case ErrorKind::SubsetTooLarge: return "SubsetTooLarge";
    case ErrorKind::ExemplarUnparseable: return "ExemplarUnparseable";
    case ErrorKind::EmptySentence: return "EmptySentence";
    case ErrorKind::AuthMissing: return "AuthMissing";
    case ErrorKind::BackendTimeout: return "BackendTimeout";
    case ErrorKind::RateLimited: return "RateLimited";
    case ErrorKind::ReplayMiss: return "ReplayMiss";
    case ErrorKind::BackendFailure: return "BackendFailure";
    case ErrorKind::RunCountMismatch: return "RunCountMismatch";
    case ErrorKind::TooFewRuns: return "TooFewRuns";
    case ErrorKind::SimilarityOutOfRange: return "SimilarityOutOfRange";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::IdMismatch: return "IdMismatch";
    case ErrorKind::MetricUnknown: return "MetricUnknown";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)) {}

}  // namespace hrex
