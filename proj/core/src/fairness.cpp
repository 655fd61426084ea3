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

#include "fairlens/fairness.hpp"

#include "fairlens/error.hpp"

namespace fairlens {

ParityVerdict wer_parity(double wer_a, double wer_b, double epsilon,
                         const std::string& group_a, const std::string& group_b) {
  if (!(wer_a > 0.0) || !(wer_b > 0.0)) {
    throw ValidationError("wer_parity: both group WERs must be positive");
  }
  if (!(epsilon > 0.0)) throw ValidationError("wer_parity: epsilon must be positive");
  ParityVerdict v;
  v.epsilon = epsilon;
  if (wer_a >= wer_b) {
    v.group_high = group_a;
    v.group_low = group_b;
    v.wer_high = wer_a;
    v.wer_low = wer_b;
  } else {
    v.group_high = group_b;
    v.group_low = group_a;
    v.wer_high = wer_b;
    v.wer_low = wer_a;
  }
  v.ratio = v.wer_high / v.wer_low;
  v.fair = v.ratio <= 1.0 + epsilon;
  v.marker = v.fair ? "" : kUnfairMarker;
  return v;
}

}  // namespace fairlens
