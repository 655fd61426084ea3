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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fairlens/aggregate.hpp"
#include "fairlens/corpus.hpp"
#include "fairlens/error.hpp"
#include "fairlens/fairness.hpp"
#include "fairlens/normalize.hpp"
#include "fairlens/stats.hpp"
#include "fairlens/types.hpp"

namespace fairlens {

// Raised when, after filtering, fewer than two groups remain anywhere; the
// CLI maps it to its own exit code.
class NoTestableGroupsError : public Error {
 public:
  using Error::Error;
};

struct EvaluationConfig {
  GroupAttribute group_attribute = GroupAttribute::kGender;
  double epsilon = kDefaultParityEpsilon;     // WER parity bound (1 + epsilon)
  double alpha_assumption = 0.05;             // assumption-check level
  std::size_t min_group_instances = 50;       // representativeness threshold
  std::set<Metric> metrics = {Metric::kWer, Metric::kCer};  // must contain wer
  NormalizerConfig normalizer;
  std::optional<std::string> embeddings_path;     // sidecar JSONL
  std::optional<std::string> embedding_command;   // external embedding command
  std::optional<std::string> category_attribute;  // e.g. a show-type column
  std::optional<ManifestFormat> manifest_format;  // default: inferred from path
};

// Instances dropped before aggregation, each in exactly one bucket.
struct Exclusions {
  std::size_t unresolved_hypotheses = 0;
  std::size_t empty_reference_units = 0;
  std::vector<std::pair<std::string, std::size_t>> unrepresentative_groups;
  std::size_t missing_embedding_units = 0;
};

// Bias delta and parity verdict for one pair of groups.
struct GroupComparison {
  std::string group_a;
  std::string group_b;
  BiasDelta bias;
  std::optional<ParityVerdict> parity;  // absent when undefined (a zero WER)
  std::string note;
};

// All results for one (model, category) split.
struct ReportCell {
  std::string model_id;
  std::string category;  // "all" covers the whole dataset
  std::size_t unit_count = 0;
  std::size_t speaker_count = 0;
  double overall_wer = 0.0;
  std::optional<double> overall_cer;
  std::optional<double> overall_bss;
  std::vector<GroupMetrics> groups;  // sorted by group name
  DecisionTrace trace;               // per-speaker WER testing across groups
  std::vector<GroupComparison> comparisons;  // pairwise when >2 groups
  std::vector<std::string> notes;
};

struct Report {
  std::string toolkit_version;
  std::string manifest_path;
  std::string hypotheses_path;
  EvaluationConfig config;
  Exclusions exclusions;
  std::vector<ReportCell> cells;
};

// Full evaluation: load -> normalize -> per-instance WER/CER(/BSS) ->
// per-speaker scores -> assumption-checked tests -> group means -> bias
// deltas -> parity verdicts. Deterministic for identical inputs and config,
// independent of the degree of parallelism (capped by FAIRLENS_THREADS).
Report run_pipeline(const EvaluationConfig& config, const std::string& manifest_path,
                    const std::string& hypotheses_path);

enum class ReportFormat { kJson, kMarkdown };

std::string render_report(const Report& report, ReportFormat format);
Report parse_report_json(const std::string& text);

// DecisionTrace JSON used by both the report and the stats subcommand.
std::string decision_trace_to_json(const DecisionTrace& trace);

}  // namespace fairlens
