// Copyright 2026 The FairLens Authors
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
#include <vector>

namespace fairlens::utf8 {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes UTF-8 into Unicode scalar values. Invalid or truncated sequences
// (including overlong encodings and surrogate code points) decode to U+FFFD,
// one replacement per rejected byte sequence.
std::vector<char32_t> decode(std::string_view text);

std::string encode(const std::vector<char32_t>& codepoints);
void append(std::string& out, char32_t cp);

}  // namespace fairlens::utf8
