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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fairlens/pipeline.hpp"

namespace fairlens {

namespace {

using nlohmann::json;

// Non-finite doubles serialize to null; read them back as NaN.
double get_double(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

std::optional<double> get_opt_double(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return get_double(j, key);
}

std::optional<std::string> get_opt_string(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<std::string>();
}

json test_result_to_json(const TestResult& r) {
  json j;
  j["test"] = std::string(to_string(r.name));
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  if (r.df1) j["df1"] = *r.df1;
  if (r.df2) j["df2"] = *r.df2;
  return j;
}

TestResult test_result_from_json(const json& j) {
  TestResult r;
  if (auto name = test_name_from_string(j.at("test").get<std::string>())) r.name = *name;
  r.statistic = get_double(j, "statistic");
  r.p_value = get_double(j, "p_value");
  r.df1 = get_opt_double(j, "df1");
  r.df2 = get_opt_double(j, "df2");
  return r;
}

json trace_to_json(const DecisionTrace& t) {
  json j;
  j["testable"] = t.testable;
  if (!t.note.empty()) j["note"] = t.note;
  json normality = json::array();
  for (const auto& [group, result] : t.normality) {
    json row;
    row["group"] = group;
    row["result"] = test_result_to_json(result);
    normality.push_back(row);
  }
  j["normality"] = normality;
  if (t.variance) j["variance"] = test_result_to_json(*t.variance);
  if (t.chosen_test) j["chosen_test"] = std::string(to_string(*t.chosen_test));
  if (t.final) j["final"] = test_result_to_json(*t.final);
  j["stars"] = t.stars;
  return j;
}

DecisionTrace trace_from_json(const json& j) {
  DecisionTrace t;
  t.testable = j.at("testable").get<bool>();
  if (j.contains("note")) t.note = j.at("note").get<std::string>();
  for (const auto& row : j.at("normality")) {
    t.normality.emplace_back(row.at("group").get<std::string>(),
                             test_result_from_json(row.at("result")));
  }
  if (j.contains("variance")) t.variance = test_result_from_json(j.at("variance"));
  if (j.contains("chosen_test")) {
    t.chosen_test = test_name_from_string(j.at("chosen_test").get<std::string>());
  }
  if (j.contains("final")) t.final = test_result_from_json(j.at("final"));
  t.stars = j.at("stars").get<std::string>();
  return t;
}

json group_metrics_to_json(const GroupMetrics& g) {
  json j;
  j["group"] = g.group;
  j["model_id"] = g.model_id;
  j["weighted_wer"] = g.weighted_wer;
  j["instance_count"] = g.instance_count;
  j["speaker_count"] = g.speaker_count;
  j["word_errors"] = g.word_errors;
  j["word_ref_len"] = g.word_ref_len;
  if (g.char_ref_len > 0) {
    j["weighted_cer"] = g.weighted_cer;
    j["char_errors"] = g.char_errors;
    j["char_ref_len"] = g.char_ref_len;
  }
  if (g.weighted_bss) {
    j["weighted_bss"] = *g.weighted_bss;
    j["bss_instance_count"] = g.bss_instance_count;
  }
  return j;
}

GroupMetrics group_metrics_from_json(const json& j) {
  GroupMetrics g;
  g.group = j.at("group").get<std::string>();
  g.model_id = j.at("model_id").get<std::string>();
  g.weighted_wer = get_double(j, "weighted_wer");
  g.instance_count = j.at("instance_count").get<std::size_t>();
  g.speaker_count = j.at("speaker_count").get<std::size_t>();
  g.word_errors = j.at("word_errors").get<std::size_t>();
  g.word_ref_len = j.at("word_ref_len").get<std::size_t>();
  if (j.contains("char_ref_len")) {
    g.weighted_cer = get_double(j, "weighted_cer");
    g.char_errors = j.at("char_errors").get<std::size_t>();
    g.char_ref_len = j.at("char_ref_len").get<std::size_t>();
  }
  if (j.contains("weighted_bss")) {
    g.weighted_bss = get_double(j, "weighted_bss");
    g.bss_instance_count = j.at("bss_instance_count").get<std::size_t>();
  }
  return g;
}

json parity_to_json(const ParityVerdict& v) {
  json j;
  j["group_high"] = v.group_high;
  j["group_low"] = v.group_low;
  j["wer_high"] = v.wer_high;
  j["wer_low"] = v.wer_low;
  j["ratio"] = v.ratio;
  j["epsilon"] = v.epsilon;
  j["fair"] = v.fair;
  j["marker"] = v.marker;
  return j;
}

ParityVerdict parity_from_json(const json& j) {
  ParityVerdict v;
  v.group_high = j.at("group_high").get<std::string>();
  v.group_low = j.at("group_low").get<std::string>();
  v.wer_high = get_double(j, "wer_high");
  v.wer_low = get_double(j, "wer_low");
  v.ratio = get_double(j, "ratio");
  v.epsilon = get_double(j, "epsilon");
  v.fair = j.at("fair").get<bool>();
  v.marker = j.at("marker").get<std::string>();
  return v;
}

json comparison_to_json(const GroupComparison& c) {
  json j;
  j["group_a"] = c.group_a;
  j["group_b"] = c.group_b;
  json bias;
  bias["absolute"] = c.bias.absolute;
  if (c.bias.relative) bias["relative"] = *c.bias.relative;
  j["bias"] = bias;
  if (c.parity) j["parity"] = parity_to_json(*c.parity);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

GroupComparison comparison_from_json(const json& j) {
  GroupComparison c;
  c.group_a = j.at("group_a").get<std::string>();
  c.group_b = j.at("group_b").get<std::string>();
  c.bias.absolute = get_double(j.at("bias"), "absolute");
  c.bias.relative = get_opt_double(j.at("bias"), "relative");
  if (j.contains("parity")) c.parity = parity_from_json(j.at("parity"));
  if (j.contains("note")) c.note = j.at("note").get<std::string>();
  return c;
}

json config_to_json(const EvaluationConfig& c) {
  json j;
  j["group_attribute"] = std::string(to_string(c.group_attribute));
  j["epsilon"] = c.epsilon;
  j["alpha_assumption"] = c.alpha_assumption;
  j["min_group_instances"] = c.min_group_instances;
  json metrics = json::array();
  for (Metric m : c.metrics) metrics.push_back(std::string(to_string(m)));
  j["metrics"] = metrics;
  j["normalizer"] = {{"remove_diacritics", c.normalizer.remove_diacritics},
                     {"bracket_removal", c.normalizer.bracket_removal}};
  if (c.embeddings_path) j["embeddings_path"] = *c.embeddings_path;
  if (c.embedding_command) j["embedding_command"] = *c.embedding_command;
  if (c.category_attribute) j["category_attribute"] = *c.category_attribute;
  if (c.manifest_format) {
    j["manifest_format"] = *c.manifest_format == ManifestFormat::kTsv ? "tsv" : "jsonl";
  }
  return j;
}

EvaluationConfig config_from_json(const json& j) {
  EvaluationConfig c;
  if (auto attr = group_attribute_from_string(j.at("group_attribute").get<std::string>())) {
    c.group_attribute = *attr;
  }
  c.epsilon = get_double(j, "epsilon");
  c.alpha_assumption = get_double(j, "alpha_assumption");
  c.min_group_instances = j.at("min_group_instances").get<std::size_t>();
  c.metrics.clear();
  for (const auto& m : j.at("metrics")) {
    if (auto metric = metric_from_string(m.get<std::string>())) c.metrics.insert(*metric);
  }
  c.normalizer.remove_diacritics = j.at("normalizer").at("remove_diacritics").get<bool>();
  c.normalizer.bracket_removal = j.at("normalizer").at("bracket_removal").get<bool>();
  c.embeddings_path = get_opt_string(j, "embeddings_path");
  c.embedding_command = get_opt_string(j, "embedding_command");
  c.category_attribute = get_opt_string(j, "category_attribute");
  if (auto fmt = get_opt_string(j, "manifest_format")) {
    c.manifest_format = *fmt == "tsv" ? ManifestFormat::kTsv : ManifestFormat::kJsonl;
  }
  return c;
}

json cell_to_json(const ReportCell& cell) {
  json j;
  j["model_id"] = cell.model_id;
  j["category"] = cell.category;
  j["unit_count"] = cell.unit_count;
  j["speaker_count"] = cell.speaker_count;
  j["overall_wer"] = cell.overall_wer;
  if (cell.overall_cer) j["overall_cer"] = *cell.overall_cer;
  if (cell.overall_bss) j["overall_bss"] = *cell.overall_bss;
  json groups = json::array();
  for (const auto& g : cell.groups) groups.push_back(group_metrics_to_json(g));
  j["groups"] = groups;
  j["trace"] = trace_to_json(cell.trace);
  json comparisons = json::array();
  for (const auto& c : cell.comparisons) comparisons.push_back(comparison_to_json(c));
  j["comparisons"] = comparisons;
  if (!cell.notes.empty()) j["notes"] = cell.notes;
  return j;
}

ReportCell cell_from_json(const json& j) {
  ReportCell cell;
  cell.model_id = j.at("model_id").get<std::string>();
  cell.category = j.at("category").get<std::string>();
  cell.unit_count = j.at("unit_count").get<std::size_t>();
  cell.speaker_count = j.at("speaker_count").get<std::size_t>();
  cell.overall_wer = get_double(j, "overall_wer");
  cell.overall_cer = get_opt_double(j, "overall_cer");
  cell.overall_bss = get_opt_double(j, "overall_bss");
  for (const auto& g : j.at("groups")) cell.groups.push_back(group_metrics_from_json(g));
  cell.trace = trace_from_json(j.at("trace"));
  for (const auto& c : j.at("comparisons")) {
    cell.comparisons.push_back(comparison_from_json(c));
  }
  if (j.contains("notes")) cell.notes = j.at("notes").get<std::vector<std::string>>();
  return cell;
}

json exclusions_to_json(const Exclusions& e) {
  json j;
  j["unresolved_hypotheses"] = e.unresolved_hypotheses;
  j["empty_reference_units"] = e.empty_reference_units;
  j["missing_embedding_units"] = e.missing_embedding_units;
  json groups = json::array();
  for (const auto& [group, count] : e.unrepresentative_groups) {
    json row;
    row["group"] = group;
    row["instances"] = count;
    groups.push_back(row);
  }
  j["unrepresentative_groups"] = groups;
  return j;
}

Exclusions exclusions_from_json(const json& j) {
  Exclusions e;
  e.unresolved_hypotheses = j.at("unresolved_hypotheses").get<std::size_t>();
  e.empty_reference_units = j.at("empty_reference_units").get<std::size_t>();
  e.missing_embedding_units = j.at("missing_embedding_units").get<std::size_t>();
  for (const auto& row : j.at("unrepresentative_groups")) {
    e.unrepresentative_groups.emplace_back(row.at("group").get<std::string>(),
                                           row.at("instances").get<std::size_t>());
  }
  return e;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string fmt_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", p);
  return buf;
}

std::string render_markdown(const Report& report) {
  std::ostringstream md;
  md << "# FairLens evaluation report\n\n";
  md << "- toolkit version: " << report.toolkit_version << "\n";
  md << "- manifest: `" << report.manifest_path << "`\n";
  md << "- hypotheses: `" << report.hypotheses_path << "`\n";
  md << "- group attribute: " << to_string(report.config.group_attribute) << "\n";
  if (report.config.category_attribute) {
    md << "- category attribute: " << *report.config.category_attribute << "\n";
  }
  md << "- parity epsilon: " << report.config.epsilon << "\n";
  md << "- assumption alpha: " << report.config.alpha_assumption << "\n";
  md << "- min instances per group: " << report.config.min_group_instances << "\n";
  md << "- significance: `*` p < 0.05, `**` p < 0.01, `***` p < 0.001; `"
     << kUnfairMarker << "` marks parity violations\n\n";

  md << "## Exclusions\n\n";
  md << "| bucket | count |\n|---|---|\n";
  md << "| unresolved hypotheses | " << report.exclusions.unresolved_hypotheses << " |\n";
  md << "| empty references | " << report.exclusions.empty_reference_units << " |\n";
  md << "| missing embeddings | " << report.exclusions.missing_embedding_units << " |\n";
  for (const auto& [group, count] : report.exclusions.unrepresentative_groups) {
    md << "| excluded group `" << group << "` | " << count << " instances |\n";
  }
  md << "\n";

  std::vector<std::string> group_names;
  for (const auto& cell : report.cells) {
    for (const auto& g : cell.groups) {
      if (std::find(group_names.begin(), group_names.end(), g.group) == group_names.end()) {
        group_names.push_back(g.group);
      }
    }
  }
  std::sort(group_names.begin(), group_names.end());

  auto metric_table = [&](const char* title, auto cell_value, auto group_value_fn,
                          bool decorate) {
    md << "## " << title << "\n\n";
    md << "| model | category | overall |";
    for (const auto& g : group_names) md << " " << g << " |";
    if (decorate) md << " bias abs (rel) | parity |";
    md << "\n|---|---|---|";
    for (std::size_t i = 0; i < group_names.size(); ++i) md << "---|";
    if (decorate) md << "---|---|";
    md << "\n";
    for (const auto& cell : report.cells) {
      const std::optional<double> overall = cell_value(cell);
      if (!overall) continue;
      md << "| " << cell.model_id << " | " << cell.category << " | " << fmt3(*overall);
      if (decorate) {
        md << cell.trace.stars;
        for (const auto& c : cell.comparisons) {
          if (c.parity && !c.parity->fair) {
            md << " " << kUnfairMarker;
            break;
          }
        }
      }
      md << " |";
      for (const auto& name : group_names) {
        const GroupMetrics* found = nullptr;
        for (const auto& g : cell.groups) {
          if (g.group == name) found = &g;
        }
        std::optional<double> v;
        if (found) v = group_value_fn(*found);
        md << " " << (v ? fmt3(*v) : "-") << " |";
      }
      if (decorate) {
        if (cell.comparisons.size() == 1) {
          const auto& c = cell.comparisons.front();
          md << " " << fmt3(c.bias.absolute) << " (";
          if (c.bias.relative) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.1f%%", *c.bias.relative * 100.0);
            md << buf;
          } else {
            md << "undefined";
          }
          md << ") |";
          if (c.parity) {
            md << " " << (c.parity->fair ? "fair" : "unfair " + c.parity->marker) << " |";
          } else {
            md << " undefined |";
          }
        } else {
          std::size_t unfair = 0;
          for (const auto& c : cell.comparisons) {
            if (c.parity && !c.parity->fair) ++unfair;
          }
          md << " pairwise |";
          md << " " << unfair << "/" << cell.comparisons.size() << " unfair |";
        }
      }
      md << "\n";
    }
    md << "\n";
  };

  metric_table(
      "Weighted WER",
      [](const ReportCell& c) -> std::optional<double> { return c.overall_wer; },
      [](const GroupMetrics& g) -> std::optional<double> { return g.weighted_wer; }, true);

  bool any_cer = false;
  bool any_bss = false;
  for (const auto& cell : report.cells) {
    any_cer = any_cer || cell.overall_cer.has_value();
    any_bss = any_bss || cell.overall_bss.has_value();
  }
  if (any_cer) {
    metric_table(
        "Weighted CER",
        [](const ReportCell& c) { return c.overall_cer; },
        [](const GroupMetrics& g) -> std::optional<double> {
          if (g.char_ref_len == 0) return std::nullopt;
          return g.weighted_cer;
        },
        false);
  }
  if (any_bss) {
    metric_table(
        "Weighted BSS",
        [](const ReportCell& c) { return c.overall_bss; },
        [](const GroupMetrics& g) { return g.weighted_bss; }, false);
  }

  md << "## Statistical test decisions\n\n";
  md << "| model | category | normality p by group | variance p | chosen test | statistic | p "
        "| stars |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& cell : report.cells) {
    md << "| " << cell.model_id << " | " << cell.category << " | ";
    if (!cell.trace.testable) {
      md << cell.trace.note << " | - | - | - | - | - |\n";
      continue;
    }
    bool first = true;
    for (const auto& [group, result] : cell.trace.normality) {
      if (!first) md << ", ";
      md << group << ": " << fmt_p(result.p_value);
      first = false;
    }
    md << " | " << (cell.trace.variance ? fmt_p(cell.trace.variance->p_value) : "-");
    md << " | " << (cell.trace.chosen_test ? to_string(*cell.trace.chosen_test) : "-");
    if (cell.trace.final) {
      md << " | " << fmt_p(cell.trace.final->statistic) << " | "
         << fmt_p(cell.trace.final->p_value);
    } else {
      md << " | - | -";
    }
    md << " | " << (cell.trace.stars.empty() ? "-" : cell.trace.stars) << " |\n";
  }
  md << "\n";
  return md.str();
}

}  // namespace

std::string render_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::kMarkdown) return render_markdown(report);
  json j;
  j["toolkit_version"] = report.toolkit_version;
  j["manifest_path"] = report.manifest_path;
  j["hypotheses_path"] = report.hypotheses_path;
  j["config"] = config_to_json(report.config);
  j["exclusions"] = exclusions_to_json(report.exclusions);
  json cells = json::array();
  for (const auto& cell : report.cells) cells.push_back(cell_to_json(cell));
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  Report report;
  report.toolkit_version = j.at("toolkit_version").get<std::string>();
  report.manifest_path = j.at("manifest_path").get<std::string>();
  report.hypotheses_path = j.at("hypotheses_path").get<std::string>();
  report.config = config_from_json(j.at("config"));
  report.exclusions = exclusions_from_json(j.at("exclusions"));
  for (const auto& cell : j.at("cells")) report.cells.push_back(cell_from_json(cell));
  return report;
}

std::string decision_trace_to_json(const DecisionTrace& trace) {
  return trace_to_json(trace).dump(2) + "\n";
}

}  // namespace fairlens
