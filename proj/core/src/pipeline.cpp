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

#include "fairlens/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <set>
#include <thread>

#include "fairlens/align.hpp"
#include "fairlens/semsim.hpp"
#include "fairlens/version.hpp"

namespace fairlens {

namespace {

std::size_t thread_budget(std::size_t work_items) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FAIRLENS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(1, std::min(n, work_items));
}

// Deterministic parallel map: each index writes only its own slot.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = thread_budget(count);
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

struct CellKey {
  std::string model_id;
  std::string category;
  auto operator<=>(const CellKey&) const = default;
};

}  // namespace

Report run_pipeline(const EvaluationConfig& config, const std::string& manifest_path,
                    const std::string& hypotheses_path) {
  if (!config.metrics.contains(Metric::kWer)) {
    throw ValidationError("config.metrics must include wer");
  }
  if (!(config.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!(config.alpha_assumption > 0.0 && config.alpha_assumption < 1.0)) {
    throw ValidationError("alpha_assumption must be in (0, 1)");
  }
  const bool want_cer = config.metrics.contains(Metric::kCer);
  bool want_bss = config.metrics.contains(Metric::kBss);
  if (want_bss && !config.embeddings_path && !config.embedding_command) {
    throw ValidationError("bss metric requires an embeddings file or command");
  }
  if (config.embeddings_path || config.embedding_command) want_bss = true;

  Report report;
  report.toolkit_version = kVersion;
  report.manifest_path = manifest_path;
  report.hypotheses_path = hypotheses_path;
  report.config = config;
  report.config.metrics.insert(Metric::kWer);
  if (want_bss) report.config.metrics.insert(Metric::kBss);

  const ManifestFormat format =
      config.manifest_format ? *config.manifest_format : manifest_format_from_path(manifest_path);
  const auto instances = load_manifest(manifest_path, format);
  const auto hypotheses = load_hypotheses(hypotheses_path);

  auto joined = join_dataset(instances, hypotheses, config.normalizer);
  report.exclusions.unresolved_hypotheses = joined.unresolved_hypotheses;

  // Empty normalized references cannot be scored (zero reference length).
  std::vector<EvaluationUnit> scoreable;
  scoreable.reserve(joined.units.size());
  for (auto& unit : joined.units) {
    if (unit.normalized_reference.empty()) {
      ++report.exclusions.empty_reference_units;
    } else {
      scoreable.push_back(std::move(unit));
    }
  }

  auto filtered =
      filter_unrepresentative_groups(scoreable, config.group_attribute, config.min_group_instances);
  report.exclusions.unrepresentative_groups = filtered.excluded_groups;
  const auto& units = filtered.kept;

  {
    std::set<std::string> kept_groups;
    for (const auto& unit : units) {
      kept_groups.insert(group_value(unit.instance, config.group_attribute));
    }
    if (kept_groups.size() < 2) {
      throw NoTestableGroupsError(
          "fewer than two representative groups remain after filtering (" +
          std::to_string(kept_groups.size()) + " kept)");
    }
  }

  std::unique_ptr<EmbeddingProvider> provider;
  if (want_bss) {
    if (config.embeddings_path) {
      provider = std::make_unique<SidecarEmbeddingProvider>(*config.embeddings_path);
    } else {
      auto cmd = std::make_unique<CommandEmbeddingProvider>(*config.embedding_command);
      std::vector<std::pair<EmbeddingKey, std::string>> requests;
      requests.reserve(units.size() * 2);
      for (const auto& unit : units) {
        requests.emplace_back(
            EmbeddingKey{unit.instance.instance_id, EmbeddingRole::kReference, unit.model_id},
            unit.normalized_reference);
        requests.emplace_back(
            EmbeddingKey{unit.instance.instance_id, EmbeddingRole::kHypothesis, unit.model_id},
            unit.normalized_hypothesis);
      }
      cmd->prime(requests);
      provider = std::move(cmd);
    }
  }

  // Per-instance scoring, parallel over units; every result lands in its own
  // slot so the outcome is independent of scheduling.
  struct Scored {
    ScoredInstance instance;
    std::string model_id;
    std::string category;
    bool missing_embedding = false;
  };
  std::vector<Scored> scored(units.size());
  parallel_for(units.size(), [&](std::size_t i) {
    const auto& unit = units[i];
    Scored s;
    s.model_id = unit.model_id;
    s.category = config.category_attribute
                     ? attribute_value(unit.instance, *config.category_attribute)
                     : std::string("all");
    ScoredInstance& inst = s.instance;
    inst.instance_id = unit.instance.instance_id;
    inst.speaker_id = unit.instance.speaker_id;
    inst.group = group_value(unit.instance, config.group_attribute);
    const auto ref_words = tokenize_words(unit.normalized_reference);
    const auto hyp_words = tokenize_words(unit.normalized_hypothesis);
    inst.word_ref_len = ref_words.size();
    inst.word_errors = edit_distance(ref_words, hyp_words);
    inst.wer = static_cast<double>(inst.word_errors) / static_cast<double>(inst.word_ref_len);
    if (want_cer) {
      const auto ref_chars = tokenize_chars(unit.normalized_reference);
      const auto hyp_chars = tokenize_chars(unit.normalized_hypothesis);
      inst.char_ref_len = ref_chars.size();
      inst.char_errors = edit_distance(ref_chars, hyp_chars);
      inst.cer = static_cast<double>(inst.char_errors) / static_cast<double>(inst.char_ref_len);
    }
    if (provider) {
      inst.bss = bss(unit, *provider);
      s.missing_embedding = !inst.bss.has_value();
    }
    scored[i] = std::move(s);
  });

  if (want_bss) {
    for (const auto& s : scored) {
      if (s.missing_embedding) ++report.exclusions.missing_embedding_units;
    }
  }

  // Assemble cells: every model x category, plus the "all" category.
  std::map<CellKey, std::vector<const Scored*>> cells;
  const bool split_categories = config.category_attribute.has_value();
  for (const auto& s : scored) {
    cells[{s.model_id, "all"}].push_back(&s);
    if (split_categories && s.category != "all") {
      cells[{s.model_id, s.category}].push_back(&s);
    }
  }

  for (const auto& [key, members] : cells) {
    ReportCell cell;
    cell.model_id = key.model_id;
    cell.category = key.category;
    cell.unit_count = members.size();

    std::vector<ScoredInstance> insts;
    insts.reserve(members.size());
    std::set<std::string> speakers;
    for (const Scored* s : members) {
      insts.push_back(s->instance);
      speakers.insert(s->instance.speaker_id);
    }
    cell.speaker_count = speakers.size();
    cell.groups = group_summary(insts, key.model_id);

    // pooled over the whole cell
    {
      std::size_t we = 0;
      std::size_t wn = 0;
      std::size_t ce = 0;
      std::size_t cn = 0;
      std::vector<WeightedScore> bss_scores;
      for (const auto& inst : insts) {
        we += inst.word_errors;
        wn += inst.word_ref_len;
        ce += inst.char_errors;
        cn += inst.char_ref_len;
        if (inst.bss) bss_scores.push_back({*inst.bss, inst.weight()});
      }
      cell.overall_wer = static_cast<double>(we) / static_cast<double>(wn);
      if (want_cer && cn > 0) {
        cell.overall_cer = static_cast<double>(ce) / static_cast<double>(cn);
      }
      if (!bss_scores.empty()) cell.overall_bss = weighted_mean(bss_scores);
    }

    // Statistical testing over per-speaker WER scores, one sample per group.
    std::map<std::string, std::vector<ScoredInstance>> by_group;
    for (const auto& inst : insts) by_group[inst.group].push_back(inst);
    std::vector<Sample> samples;
    for (const auto& [group, group_insts] : by_group) {
      Sample sample;
      sample.group = group;
      for (const auto& speaker : per_speaker_scores(group_insts, Metric::kWer)) {
        sample.values.push_back(speaker.value);
      }
      samples.push_back(std::move(sample));
    }
    cell.trace = select_and_test(samples, config.alpha_assumption);

    if (cell.groups.size() > 2) {
      cell.notes.push_back("more than two groups: pairwise comparisons reported");
    }
    for (std::size_t i = 0; i < cell.groups.size(); ++i) {
      for (std::size_t j = i + 1; j < cell.groups.size(); ++j) {
        const auto& a = cell.groups[i];
        const auto& b = cell.groups[j];
        GroupComparison cmp;
        cmp.group_a = a.group;
        cmp.group_b = b.group;
        cmp.bias = bias_delta(a, b);
        if (a.weighted_wer > 0.0 && b.weighted_wer > 0.0) {
          cmp.parity = wer_parity(a.weighted_wer, b.weighted_wer, config.epsilon, a.group, b.group);
        } else if (a.weighted_wer == b.weighted_wer) {
          // both groups are error-free: trivially within bounds
          ParityVerdict v;
          v.group_high = a.group;
          v.group_low = b.group;
          v.epsilon = config.epsilon;
          cmp.parity = v;
          cmp.note = "both group WERs are zero; parity trivially fair";
        } else {
          cmp.note = "parity undefined: one group WER is zero";
        }
        cell.comparisons.push_back(std::move(cmp));
      }
    }
    report.cells.push_back(std::move(cell));
  }

  return report;
}

}  // namespace fairlens
