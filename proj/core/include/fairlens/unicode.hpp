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

#include <vector>

namespace fairlens::unicode {

// Category queries backed by generated UCD tables (see
// scripts/gen_unicode_tables.py).
bool is_letter(char32_t cp);        // general category L*
bool is_decimal_digit(char32_t cp); // general category Nd
bool is_mark(char32_t cp);          // general category M*

// One-to-one lowercase mapping; code points whose lowercase form expands to
// multiple code points are left unchanged.
char32_t simple_lower(char32_t cp);

// Appends the full canonical decomposition of cp (recursively expanded,
// Hangul handled algorithmically). Code points without a canonical
// decomposition are appended as-is.
void canonical_decompose(char32_t cp, std::vector<char32_t>& out);

}  // namespace fairlens::unicode
