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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fairlens {

enum class Granularity { kWord, kCharacter };

// Unit-cost edit alignment tallies between a reference and a hypothesis
// token sequence.
//
// Invariants: substitutions + deletions + hits == reference_length,
// substitutions + insertions + hits == hypothesis length, and
// substitutions + deletions + insertions is the minimal edit distance.
struct AlignmentCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t hits = 0;
  std::size_t reference_length = 0;
  Granularity granularity = Granularity::kWord;

  std::size_t errors() const { return substitutions + deletions + insertions; }
};

// Splits a normalized string on single spaces; "" -> {}.
std::vector<std::string> tokenize_words(std::string_view text);

// One token per Unicode scalar value, spaces included; "" -> {}.
std::vector<std::string> tokenize_chars(std::string_view text);

// Minimal unit-cost Levenshtein distance, O(|ref|*|hyp|) time and
// O(min(|ref|,|hyp|)) space.
std::size_t edit_distance(const std::vector<std::string>& reference,
                          const std::vector<std::string>& hypothesis);

// Full alignment with a deterministic backtrace: among minimal-cost
// alignments, ties are broken preferring hit > substitution > deletion >
// insertion.
AlignmentCounts align(const std::vector<std::string>& reference,
                      const std::vector<std::string>& hypothesis,
                      Granularity granularity = Granularity::kWord);

// Word error rate (S+D+I)/N over normalized strings. Throws ValidationError
// when the reference has no word tokens.
double wer(std::string_view reference_text, std::string_view hypothesis_text);

// Character error rate (S+D+I)/N over normalized strings. Throws
// ValidationError when the reference is empty.
double cer(std::string_view reference_text, std::string_view hypothesis_text);

}  // namespace fairlens
