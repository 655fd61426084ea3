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
#include <string>
#include <utility>
#include <vector>

#include "fairlens/normalize.hpp"
#include "fairlens/types.hpp"

namespace fairlens {

enum class ManifestFormat { kTsv, kJsonl };

// .tsv/.txt -> TSV, .jsonl/.json -> JSONL; anything else is an error.
ManifestFormat manifest_format_from_path(const std::string& path);

// TSV manifests carry the header
//   instance_id  speaker_id  reference  gender  duration_s  [age_band  [accent]]
// optionally followed by extra named columns (free-form attributes such as a
// show-type category). JSONL manifests use the same field names; extra
// string-valued keys become extras.
//
// Unknown demographic values map to unknown/absent; row order is preserved.
// Throws ParseError (with the row number) on malformed rows and
// ValidationError on duplicate instance_ids.
std::vector<TranscriptInstance> load_manifest(const std::string& path, ManifestFormat format);

// Inverse of load_manifest: load(save(load(f))) == load(f).
void save_manifest(const std::vector<TranscriptInstance>& instances, const std::string& path,
                   ManifestFormat format);

// JSONL records {"instance_id": ..., "model_id": ..., "text": ...}. Empty
// text is legal (a model may emit nothing). Referential integrity against a
// manifest is checked in join_dataset, not here.
std::vector<Hypothesis> load_hypotheses(const std::string& path);
void save_hypotheses(const std::vector<Hypothesis>& hypotheses, const std::string& path);

struct JoinResult {
  std::vector<EvaluationUnit> units;         // one per resolvable hypothesis
  std::size_t unresolved_hypotheses = 0;     // dropped, reported by count
  std::vector<std::string> warnings;
};

// Joins hypotheses to instances and normalizes both texts. Throws
// ValidationError when nothing resolves.
JoinResult join_dataset(const std::vector<TranscriptInstance>& instances,
                        const std::vector<Hypothesis>& hypotheses,
                        const NormalizerConfig& normalizer);

struct FilterResult {
  std::vector<EvaluationUnit> kept;
  // excluded group -> number of distinct instances; includes "unknown",
  // which is always excluded.
  std::vector<std::pair<std::string, std::size_t>> excluded_groups;
};

// Keeps units whose group has at least min_instances distinct instances.
// Membership-only: unit contents are never modified.
FilterResult filter_unrepresentative_groups(const std::vector<EvaluationUnit>& units,
                                            GroupAttribute attribute,
                                            std::size_t min_instances);

// External transcriber adapter: runs a user-configured command once per
// audio file (path appended as the last argument) and reads the hypothesis
// text from its standard output. A nonzero exit marks the instance failed.
struct TranscriberItem {
  std::string instance_id;
  std::string audio_path;
};

struct TranscriberResult {
  std::vector<Hypothesis> hypotheses;
  std::vector<std::string> failed_instance_ids;
};

TranscriberResult transcribe_with_command(const std::string& command,
                                          const std::vector<TranscriberItem>& items,
                                          const std::string& model_id);

}  // namespace fairlens
