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

#include "fairlens/normalize.hpp"

#include <vector>

#include "fairlens/unicode.hpp"
#include "fairlens/utf8.hpp"

namespace fairlens {

namespace {

// Deletes [...] and (...) spans, scanning left to right and pairing each
// opener with the next closer of the same kind. Unmatched brackets survive.
std::vector<char32_t> remove_bracketed(const std::vector<char32_t>& in) {
  std::vector<char32_t> out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    const char32_t c = in[i];
    if (c == U'[' || c == U'(') {
      const char32_t closer = (c == U'[') ? U']' : U')';
      std::size_t j = i + 1;
      while (j < in.size() && in[j] != closer) ++j;
      if (j < in.size()) {
        i = j + 1;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

bool is_word_char(char32_t c) {
  return unicode::is_letter(c) || unicode::is_decimal_digit(c);
}

}  // namespace

std::string normalize_text(std::string_view raw, const NormalizerConfig& config) {
  std::vector<char32_t> cps = utf8::decode(raw);
  for (char32_t& c : cps) c = unicode::simple_lower(c);

  if (config.bracket_removal) cps = remove_bracketed(cps);

  // Keep letters, digits, and apostrophes flanked by letters; everything
  // else becomes a space.
  std::vector<char32_t> kept;
  kept.reserve(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (is_word_char(c)) {
      kept.push_back(c);
    } else if (c == U'\'' && i > 0 && i + 1 < cps.size() &&
               unicode::is_letter(cps[i - 1]) && unicode::is_letter(cps[i + 1])) {
      kept.push_back(c);
    } else {
      kept.push_back(U' ');
    }
  }

  if (config.remove_diacritics) {
    std::vector<char32_t> decomposed;
    decomposed.reserve(kept.size());
    std::vector<char32_t> tmp;
    for (char32_t c : kept) {
      tmp.clear();
      unicode::canonical_decompose(c, tmp);
      for (char32_t d : tmp) {
        if (!unicode::is_mark(d)) decomposed.push_back(d);
      }
    }
    kept.swap(decomposed);
  }

  std::string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (char32_t c : kept) {
    if (c == U' ') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8::append(out, c);
  }
  return out;
}

}  // namespace fairlens
