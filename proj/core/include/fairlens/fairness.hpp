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

namespace fairlens {

inline constexpr double kDefaultParityEpsilon = 0.25;
inline constexpr const char* kUnfairMarker = "≠";  // ≠

// Verdict of the WER parity check between two groups: the ratio of the worse
// to the better group WER against the (1 + epsilon) bound. The boundary
// ratio == 1 + epsilon counts as fair.
struct ParityVerdict {
  std::string group_high;  // group with the larger WER
  std::string group_low;
  double wer_high = 0.0;
  double wer_low = 0.0;
  double ratio = 1.0;  // max/min, >= 1
  double epsilon = kDefaultParityEpsilon;
  bool fair = true;
  std::string marker;  // "≠" iff not fair
};

// Throws ValidationError unless both WERs and epsilon are positive.
ParityVerdict wer_parity(double wer_a, double wer_b, double epsilon = kDefaultParityEpsilon,
                         const std::string& group_a = "a", const std::string& group_b = "b");

}  // namespace fairlens
