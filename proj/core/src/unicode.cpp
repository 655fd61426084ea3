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

#include "fairlens/unicode.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>

namespace fairlens::unicode {

namespace {

struct CpRange {
  char32_t lo;
  char32_t hi;
};

struct CpPair {
  char32_t cp;
  char32_t lower;
};

struct DecompEntry {
  char32_t cp;
  std::uint32_t offset;
  std::uint32_t length;
};

#include "unicode_data.inc"

template <std::size_t N>
bool in_ranges(const CpRange (&ranges)[N], char32_t cp) {
  auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                             [](char32_t v, const CpRange& r) { return v < r.lo; });
  return it != std::begin(ranges) && cp <= std::prev(it)->hi;
}

// Hangul syllable decomposition, Unicode ch. 3.12.
constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulSCount = 11172;

}  // namespace

bool is_letter(char32_t cp) { return in_ranges(kLetterRanges, cp); }

bool is_decimal_digit(char32_t cp) { return in_ranges(kDigitRanges, cp); }

bool is_mark(char32_t cp) { return in_ranges(kMarkRanges, cp); }

char32_t simple_lower(char32_t cp) {
  auto it = std::lower_bound(std::begin(kLowerEntries), std::end(kLowerEntries), cp,
                             [](const CpPair& p, char32_t v) { return p.cp < v; });
  if (it != std::end(kLowerEntries) && it->cp == cp) return it->lower;
  return cp;
}

void canonical_decompose(char32_t cp, std::vector<char32_t>& out) {
  const int s_index = static_cast<int>(cp) - static_cast<int>(kHangulSBase);
  if (s_index >= 0 && s_index < kHangulSCount) {
    out.push_back(kHangulLBase + s_index / (kHangulVCount * kHangulTCount));
    out.push_back(kHangulVBase + (s_index % (kHangulVCount * kHangulTCount)) / kHangulTCount);
    const int t = s_index % kHangulTCount;
    if (t > 0) out.push_back(kHangulTBase + t);
    return;
  }
  auto it = std::lower_bound(std::begin(kDecompEntries), std::end(kDecompEntries), cp,
                             [](const DecompEntry& e, char32_t v) { return e.cp < v; });
  if (it != std::end(kDecompEntries) && it->cp == cp) {
    for (std::uint32_t k = 0; k < it->length; ++k) {
      out.push_back(kDecompPool[it->offset + k]);
    }
    return;
  }
  out.push_back(cp);
}

}  // namespace fairlens::unicode
