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

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace fairlens {

enum class Gender { kMale, kFemale, kUnknown };

std::string_view to_string(Gender g);
Gender gender_from_string(std::string_view s);  // anything unrecognized -> kUnknown

// One utterance of the evaluation corpus: reference transcript plus speaker
// and demographic metadata. reference_text is raw, pre-normalization.
struct TranscriptInstance {
  std::string instance_id;
  std::string speaker_id;
  std::string reference_text;
  std::optional<double> duration_s;
  Gender gender = Gender::kUnknown;
  std::optional<std::string> age_band;
  std::optional<std::string> accent;
  // Extra manifest columns (e.g. a show-type category), kept verbatim.
  std::map<std::string, std::string> extras;

  bool operator==(const TranscriptInstance&) const = default;
};

// One model output for one instance. (instance_id, model_id) is unique.
struct Hypothesis {
  std::string instance_id;
  std::string model_id;
  std::string text;

  bool operator==(const Hypothesis&) const = default;
};

// A joined, normalized (reference, hypothesis) pair ready for scoring.
struct EvaluationUnit {
  TranscriptInstance instance;
  std::string model_id;
  std::string hypothesis_text;
  std::string normalized_reference;
  std::string normalized_hypothesis;

  bool operator==(const EvaluationUnit&) const = default;
};

// Demographic attributes a dataset can be grouped by.
enum class GroupAttribute { kGender, kAgeBand, kAccent };

std::string_view to_string(GroupAttribute a);
std::optional<GroupAttribute> group_attribute_from_string(std::string_view s);

inline constexpr const char* kUnknownGroup = "unknown";

// Group value of an instance under the given attribute; missing or empty
// values map to "unknown".
std::string group_value(const TranscriptInstance& instance, GroupAttribute attribute);

// Value of an arbitrary named attribute: one of the fixed fields or an extra
// manifest column. Missing or empty values map to "unknown".
std::string attribute_value(const TranscriptInstance& instance, std::string_view name);

}  // namespace fairlens
