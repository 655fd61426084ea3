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

namespace fairlens {

struct NormalizerConfig {
  bool remove_diacritics = false;
  bool bracket_removal = true;
};

// Text standardization applied to references and hypotheses before scoring.
// Steps, in order:
//   1. lowercase each code point (simple one-to-one mapping)
//   2. if bracket_removal: delete [...] and (...) spans including the
//      brackets; non-nested, first matching closer wins, unmatched brackets
//      are left in place
//   3. replace every code point that is not a letter, a decimal digit, or an
//      apostrophe between two letters with a space
//   4. if remove_diacritics: canonically decompose and drop combining marks
//   5. collapse whitespace runs to single spaces and trim
//
// Total function: never throws, "" maps to "". Idempotent.
std::string normalize_text(std::string_view raw, const NormalizerConfig& config = {});

}  // namespace fairlens
