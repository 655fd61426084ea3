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

#include "fairlens/align.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "fairlens/error.hpp"
#include "fairlens/utf8.hpp"

namespace fairlens {

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) tokens.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

std::vector<std::string> tokenize_chars(std::string_view text) {
  std::vector<std::string> tokens;
  for (char32_t cp : utf8::decode(text)) {
    std::string t;
    utf8::append(t, cp);
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::size_t edit_distance(const std::vector<std::string>& reference,
                          const std::vector<std::string>& hypothesis) {
  const auto* shorter = &reference;
  const auto* longer = &hypothesis;
  if (shorter->size() > longer->size()) std::swap(shorter, longer);

  std::vector<std::uint32_t> prev(shorter->size() + 1);
  std::vector<std::uint32_t> cur(shorter->size() + 1);
  std::iota(prev.begin(), prev.end(), 0u);
  for (std::size_t i = 1; i <= longer->size(); ++i) {
    cur[0] = static_cast<std::uint32_t>(i);
    const std::string& a = (*longer)[i - 1];
    for (std::size_t j = 1; j <= shorter->size(); ++j) {
      const std::uint32_t diag = prev[j - 1] + (a == (*shorter)[j - 1] ? 0u : 1u);
      cur[j] = std::min({diag, prev[j] + 1u, cur[j - 1] + 1u});
    }
    prev.swap(cur);
  }
  return prev[shorter->size()];
}

AlignmentCounts align(const std::vector<std::string>& reference,
                      const std::vector<std::string>& hypothesis,
                      Granularity granularity) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();
  std::vector<std::uint32_t> cost((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return cost[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag =
          at(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0u : 1u);
      at(i, j) = std::min({diag, at(i - 1, j) + 1u, at(i, j - 1) + 1u});
    }
  }

  AlignmentCounts counts;
  counts.reference_length = n;
  counts.granularity = granularity;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && reference[i - 1] == hypothesis[j - 1] &&
        at(i - 1, j - 1) == at(i, j)) {
      ++counts.hits;
      --i;
      --j;
    } else if (i > 0 && j > 0 && at(i - 1, j - 1) + 1 == at(i, j)) {
      ++counts.substitutions;
      --i;
      --j;
    } else if (i > 0 && at(i - 1, j) + 1 == at(i, j)) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

double wer(std::string_view reference_text, std::string_view hypothesis_text) {
  const auto ref = tokenize_words(reference_text);
  if (ref.empty()) {
    throw ValidationError("wer undefined for empty reference");
  }
  const auto hyp = tokenize_words(hypothesis_text);
  return static_cast<double>(edit_distance(ref, hyp)) / static_cast<double>(ref.size());
}

double cer(std::string_view reference_text, std::string_view hypothesis_text) {
  const auto ref = tokenize_chars(reference_text);
  if (ref.empty()) {
    throw ValidationError("cer undefined for empty reference");
  }
  const auto hyp = tokenize_chars(hypothesis_text);
  return static_cast<double>(edit_distance(ref, hyp)) / static_cast<double>(ref.size());
}

}  // namespace fairlens
