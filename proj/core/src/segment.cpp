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

#include "fairlens/segment.hpp"

#include <cmath>

#include "fairlens/error.hpp"

namespace fairlens {

namespace {

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

std::size_t part_count(double duration_s, double cap_s) {
  std::size_t n = static_cast<std::size_t>(std::ceil(duration_s / cap_s));
  if (n == 0) n = 1;
  // make minimality robust to the division rounding either way
  while (n > 1 && duration_s / static_cast<double>(n - 1) <= cap_s) --n;
  while (duration_s / static_cast<double>(n) > cap_s) ++n;
  return n;
}

}  // namespace

std::vector<double> plan_parts(double duration_s, double cap_s) {
  if (!(duration_s > 0.0)) throw ValidationError("plan_parts: duration must be positive");
  if (!(cap_s > 0.0)) throw ValidationError("plan_parts: cap must be positive");
  const std::size_t n = part_count(duration_s, cap_s);
  return std::vector<double>(n, duration_s / static_cast<double>(n));
}

SegmentPlan split_turn(const SpeakerTurn& turn, double cap_s) {
  if (!(turn.end_s > turn.start_s)) {
    throw ValidationError("split_turn: turn '" + turn.speaker_id + "' must have end > start");
  }
  const double duration = turn.end_s - turn.start_s;
  const std::size_t n = part_count(duration, cap_s);
  SegmentPlan plan;
  plan.parts.reserve(n);
  double prev = round_ms(turn.start_s);
  for (std::size_t i = 1; i <= n; ++i) {
    const double boundary =
        i == n ? round_ms(turn.end_s)
               : round_ms(turn.start_s + duration * static_cast<double>(i) / static_cast<double>(n));
    plan.parts.emplace_back(prev, boundary);
    prev = boundary;
  }
  return plan;
}

}  // namespace fairlens
