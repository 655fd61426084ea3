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
#include <optional>
#include <string>
#include <vector>

namespace fairlens {

enum class Metric { kWer, kCer, kBss };

std::string_view to_string(Metric m);
std::optional<Metric> metric_from_string(std::string_view s);

// One per-instance score with its aggregation weight (the number of words in
// the normalized reference).
struct WeightedScore {
  double value = 0.0;
  double weight = 0.0;
};

// Weighted mean sum(w*v)/sum(w), accumulated with compensated summation.
// Throws ValidationError on an empty list or nonpositive total weight.
double weighted_mean(const std::vector<WeightedScore>& scores);

// A scored evaluation unit, the input to all aggregation. Counts are kept so
// group summaries can pool them exactly.
struct ScoredInstance {
  std::string instance_id;
  std::string speaker_id;
  std::string group;
  std::size_t word_errors = 0;   // S+D+I at word granularity
  std::size_t word_ref_len = 0;  // N_w
  std::size_t char_errors = 0;
  std::size_t char_ref_len = 0;
  double wer = 0.0;
  double cer = 0.0;
  std::optional<double> bss;

  double weight() const { return static_cast<double>(word_ref_len); }
};

// Within-speaker weighted mean of one metric; the per-speaker sample used
// for statistical testing.
struct SpeakerScore {
  std::string speaker_id;
  Metric metric = Metric::kWer;
  double value = 0.0;
  double total_weight = 0.0;
  std::size_t instance_count = 0;
};

// One SpeakerScore per distinct speaker, sorted by speaker_id.
std::vector<SpeakerScore> per_speaker_scores(const std::vector<ScoredInstance>& instances,
                                             Metric metric);

// Weighted summary of one demographic group under one model. WER and CER are
// pooled error counts over pooled reference lengths; BSS is the word-count
// weighted mean over instances that have embeddings.
struct GroupMetrics {
  std::string group;
  std::string model_id;
  double weighted_wer = 0.0;
  double weighted_cer = 0.0;
  std::optional<double> weighted_bss;
  std::size_t instance_count = 0;
  std::size_t speaker_count = 0;
  std::size_t bss_instance_count = 0;
  std::size_t word_errors = 0;
  std::size_t word_ref_len = 0;
  std::size_t char_errors = 0;
  std::size_t char_ref_len = 0;
};

// One GroupMetrics per distinct group value, sorted by group name. Groups
// with zero instances are omitted.
std::vector<GroupMetrics> group_summary(const std::vector<ScoredInstance>& instances,
                                        const std::string& model_id);

// Absolute and relative difference of two group WERs. The relative value is
// the absolute difference over the smaller group WER; undefined (nullopt)
// when the smaller WER is zero.
struct BiasDelta {
  double absolute = 0.0;
  std::optional<double> relative;
};

BiasDelta bias_delta(const GroupMetrics& a, const GroupMetrics& b);
BiasDelta bias_delta(double wer_a, double wer_b);

}  // namespace fairlens
