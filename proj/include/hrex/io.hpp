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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hrex {

/// Whole file as bytes. Throws FileUnreadable.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, fsyncs, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Splits on '\n', dropping a trailing '\r' from each line. A final empty
/// line after the last '\n' is not returned.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace hrex
