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

#include <initializer_list>
#include <string>
#include <string_view>

namespace hrex {

/// Lowercase 64-hex-digit SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 over a length-prefixed encoding of the parts, so that
/// ("ab", "c") and ("a", "bc") hash differently.
std::string sha256_hex_fields(std::initializer_list<std::string_view> parts);

}  // namespace hrex
