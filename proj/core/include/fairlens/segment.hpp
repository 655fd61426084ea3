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
#include <vector>

namespace fairlens {

inline constexpr double kDefaultSegmentCapS = 30.0;

// One speaker's contiguous turn in a long-form recording.
struct SpeakerTurn {
  std::string speaker_id;
  double start_s = 0.0;
  double end_s = 0.0;  // must be > start_s
  std::string text;    // optional transcript
};

// Contiguous, non-overlapping parts covering a turn, each at most the cap
// and all of equal duration up to the millisecond quantum.
struct SegmentPlan {
  std::vector<std::pair<double, double>> parts;  // (start_s, end_s)
};

// Splits a duration into the fewest equal parts not exceeding cap_s:
// n = ceil(duration / cap), each part duration / n. Throws ValidationError
// on a nonpositive duration or cap.
std::vector<double> plan_parts(double duration_s, double cap_s = kDefaultSegmentCapS);

// Applies plan_parts to a turn, emitting millisecond-rounded timestamps; the
// final part absorbs the rounding remainder (at most 1 ms) and ends exactly
// at the rounded turn end.
SegmentPlan split_turn(const SpeakerTurn& turn, double cap_s = kDefaultSegmentCapS);

}  // namespace fairlens
