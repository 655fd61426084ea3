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

#include "fairlens/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fairlens/error.hpp"

namespace fairlens {

namespace {

// Kahan compensated accumulator.
class Accumulator {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double sum() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kWer: return "wer";
    case Metric::kCer: return "cer";
    case Metric::kBss: return "bss";
  }
  return "wer";
}

std::optional<Metric> metric_from_string(std::string_view s) {
  if (s == "wer") return Metric::kWer;
  if (s == "cer") return Metric::kCer;
  if (s == "bss") return Metric::kBss;
  return std::nullopt;
}

double weighted_mean(const std::vector<WeightedScore>& scores) {
  if (scores.empty()) throw ValidationError("weighted_mean of empty list");
  Accumulator num;
  Accumulator den;
  for (const auto& s : scores) {
    num.add(s.weight * s.value);
    den.add(s.weight);
  }
  if (!(den.sum() > 0.0)) throw ValidationError("weighted_mean with zero total weight");
  return num.sum() / den.sum();
}

std::vector<SpeakerScore> per_speaker_scores(const std::vector<ScoredInstance>& instances,
                                             Metric metric) {
  std::map<std::string, std::vector<WeightedScore>> by_speaker;
  for (const auto& inst : instances) {
    std::optional<double> value;
    switch (metric) {
      case Metric::kWer: value = inst.wer; break;
      case Metric::kCer: value = inst.cer; break;
      case Metric::kBss: value = inst.bss; break;
    }
    if (!value) continue;  // instances without an embedding don't enter BSS
    by_speaker[inst.speaker_id].push_back({*value, inst.weight()});
  }
  std::vector<SpeakerScore> out;
  out.reserve(by_speaker.size());
  for (const auto& [speaker, scores] : by_speaker) {
    SpeakerScore s;
    s.speaker_id = speaker;
    s.metric = metric;
    s.value = weighted_mean(scores);
    Accumulator w;
    for (const auto& sc : scores) w.add(sc.weight);
    s.total_weight = w.sum();
    s.instance_count = scores.size();
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<GroupMetrics> group_summary(const std::vector<ScoredInstance>& instances,
                                        const std::string& model_id) {
  struct Pooled {
    std::size_t word_errors = 0;
    std::size_t word_ref_len = 0;
    std::size_t char_errors = 0;
    std::size_t char_ref_len = 0;
    std::size_t count = 0;
    std::set<std::string> speakers;
    std::vector<WeightedScore> bss_scores;
  };
  std::map<std::string, Pooled> by_group;
  for (const auto& inst : instances) {
    Pooled& p = by_group[inst.group];
    p.word_errors += inst.word_errors;
    p.word_ref_len += inst.word_ref_len;
    p.char_errors += inst.char_errors;
    p.char_ref_len += inst.char_ref_len;
    p.count += 1;
    p.speakers.insert(inst.speaker_id);
    if (inst.bss) p.bss_scores.push_back({*inst.bss, inst.weight()});
  }
  std::vector<GroupMetrics> out;
  out.reserve(by_group.size());
  for (const auto& [group, p] : by_group) {
    GroupMetrics g;
    g.group = group;
    g.model_id = model_id;
    g.word_errors = p.word_errors;
    g.word_ref_len = p.word_ref_len;
    g.char_errors = p.char_errors;
    g.char_ref_len = p.char_ref_len;
    g.weighted_wer = p.word_ref_len == 0
                         ? 0.0
                         : static_cast<double>(p.word_errors) / static_cast<double>(p.word_ref_len);
    g.weighted_cer = p.char_ref_len == 0
                         ? 0.0
                         : static_cast<double>(p.char_errors) / static_cast<double>(p.char_ref_len);
    if (!p.bss_scores.empty()) {
      g.weighted_bss = weighted_mean(p.bss_scores);
      g.bss_instance_count = p.bss_scores.size();
    }
    g.instance_count = p.count;
    g.speaker_count = p.speakers.size();
    out.push_back(std::move(g));
  }
  return out;
}

BiasDelta bias_delta(double wer_a, double wer_b) {
  BiasDelta d;
  d.absolute = std::fabs(wer_a - wer_b);
  const double lo = std::min(wer_a, wer_b);
  if (lo > 0.0) d.relative = d.absolute / lo;
  return d;
}

BiasDelta bias_delta(const GroupMetrics& a, const GroupMetrics& b) {
  return bias_delta(a.weighted_wer, b.weighted_wer);
}

}  // namespace fairlens
