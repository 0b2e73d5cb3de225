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

#include <string>
#include <string_view>

namespace hrex {

/// Unicode NFC, outer whitespace trimmed, inner whitespace runs collapsed to
/// a single ASCII space. Case is preserved. Idempotent.
std::string normalize(std::string_view text);

/// NFC only.
std::string nfc(std::string_view text);

/// Strips leading/trailing Unicode whitespace, nothing else.
std::string trim(std::string_view text);

/// Full Unicode case folding of NFC text.
std::string casefold(std::string_view text);

/// Decodes UTF-8 into scalar values. Ill-formed sequences decode to U+FFFD.
std::u32string to_code_points(std::string_view text);

std::string to_utf8(std::u32string_view code_points);

}  // namespace hrex
