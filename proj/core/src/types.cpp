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

#include "fairlens/types.hpp"

namespace fairlens {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::kMale: return "male";
    case Gender::kFemale: return "female";
    case Gender::kUnknown: return "unknown";
  }
  return "unknown";
}

Gender gender_from_string(std::string_view s) {
  if (s == "male") return Gender::kMale;
  if (s == "female") return Gender::kFemale;
  return Gender::kUnknown;
}

std::string_view to_string(GroupAttribute a) {
  switch (a) {
    case GroupAttribute::kGender: return "gender";
    case GroupAttribute::kAgeBand: return "age_band";
    case GroupAttribute::kAccent: return "accent";
  }
  return "gender";
}

std::optional<GroupAttribute> group_attribute_from_string(std::string_view s) {
  if (s == "gender") return GroupAttribute::kGender;
  if (s == "age_band") return GroupAttribute::kAgeBand;
  if (s == "accent") return GroupAttribute::kAccent;
  return std::nullopt;
}

namespace {

std::string or_unknown(const std::optional<std::string>& v) {
  return v && !v->empty() ? *v : std::string(kUnknownGroup);
}

}  // namespace

std::string group_value(const TranscriptInstance& instance, GroupAttribute attribute) {
  switch (attribute) {
    case GroupAttribute::kGender: return std::string(to_string(instance.gender));
    case GroupAttribute::kAgeBand: return or_unknown(instance.age_band);
    case GroupAttribute::kAccent: return or_unknown(instance.accent);
  }
  return kUnknownGroup;
}

std::string attribute_value(const TranscriptInstance& instance, std::string_view name) {
  if (auto attr = group_attribute_from_string(name)) return group_value(instance, *attr);
  auto it = instance.extras.find(std::string(name));
  if (it != instance.extras.end() && !it->second.empty()) return it->second;
  return kUnknownGroup;
}

}  // namespace fairlens
