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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairlens/corpus.hpp"
#include "fairlens/normalize.hpp"
#include "fairlens/pipeline.hpp"
#include "fairlens/segment.hpp"
#include "fairlens/stats.hpp"
#include "fairlens/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNoTestableGroups = 3;

struct EvalOptions {
  std::string manifest;
  std::string hypotheses;
  std::string embeddings;
  std::string embedding_command;
  std::string group_by = "gender";
  std::string category_by;
  std::string metrics = "wer,cer";
  std::string manifest_format;
  double epsilon = fairlens::kDefaultParityEpsilon;
  double alpha = 0.05;
  std::size_t min_group = 50;
  bool remove_diacritics = false;
  bool keep_brackets = false;
  std::string out;
  std::string markdown;
};

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fairlens::Error("cannot write " + path);
  out << content;
}

int run_eval(const EvalOptions& opt) {
  fairlens::EvaluationConfig config;
  const auto attr = fairlens::group_attribute_from_string(opt.group_by);
  if (!attr) {
    std::cerr << "fairlens: --group-by must be gender, age_band, or accent\n";
    return kExitInputError;
  }
  config.group_attribute = *attr;
  config.epsilon = opt.epsilon;
  config.alpha_assumption = opt.alpha;
  config.min_group_instances = opt.min_group;
  config.normalizer.remove_diacritics = opt.remove_diacritics;
  config.normalizer.bracket_removal = !opt.keep_brackets;
  if (!opt.embeddings.empty()) config.embeddings_path = opt.embeddings;
  if (!opt.embedding_command.empty()) config.embedding_command = opt.embedding_command;
  if (!opt.category_by.empty()) config.category_attribute = opt.category_by;
  if (!opt.manifest_format.empty()) {
    if (opt.manifest_format == "tsv") {
      config.manifest_format = fairlens::ManifestFormat::kTsv;
    } else if (opt.manifest_format == "jsonl") {
      config.manifest_format = fairlens::ManifestFormat::kJsonl;
    } else {
      std::cerr << "fairlens: --format must be tsv or jsonl\n";
      return kExitInputError;
    }
  }
  config.metrics.clear();
  std::istringstream metric_list(opt.metrics);
  std::string name;
  while (std::getline(metric_list, name, ',')) {
    const auto metric = fairlens::metric_from_string(name);
    if (!metric) {
      std::cerr << "fairlens: unknown metric '" << name << "'\n";
      return kExitInputError;
    }
    config.metrics.insert(*metric);
  }

  const fairlens::Report report = fairlens::run_pipeline(config, opt.manifest, opt.hypotheses);
  write_file(opt.out, fairlens::render_report(report, fairlens::ReportFormat::kJson));
  if (!opt.markdown.empty()) {
    write_file(opt.markdown, fairlens::render_report(report, fairlens::ReportFormat::kMarkdown));
  }
  std::size_t unfair = 0;
  std::size_t significant = 0;
  for (const auto& cell : report.cells) {
    if (!cell.trace.stars.empty()) ++significant;
    for (const auto& c : cell.comparisons) {
      if (c.parity && !c.parity->fair) {
        ++unfair;
        break;
      }
    }
  }
  std::cerr << "fairlens: " << report.cells.size() << " cells, " << significant
            << " with significant differences, " << unfair << " parity violations\n";
  return kExitOk;
}

int run_normalize(bool remove_diacritics, bool keep_brackets) {
  fairlens::NormalizerConfig config;
  config.remove_diacritics = remove_diacritics;
  config.bracket_removal = !keep_brackets;
  std::string line;
  while (std::getline(std::cin, line)) {
    std::cout << fairlens::normalize_text(line, config) << "\n";
  }
  return kExitOk;
}

int run_stats(const std::string& path, double alpha) {
  std::ifstream in(path);
  if (!in) throw fairlens::Error("cannot open " + path);
  std::map<std::string, std::vector<double>> groups;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fairlens::ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!row.contains("group") || !row.contains("value")) {
      throw fairlens::ParseError("row needs group and value", lineno);
    }
    groups[row["group"].get<std::string>()].push_back(row["value"].get<double>());
  }
  std::vector<fairlens::Sample> samples;
  for (auto& [group, values] : groups) samples.push_back({group, std::move(values)});
  const auto trace = fairlens::select_and_test(samples, alpha);
  std::cout << fairlens::decision_trace_to_json(trace);
  return trace.testable ? kExitOk : kExitNoTestableGroups;
}

int run_segment_plan(const std::string& in_path, const std::string& out_path, double cap) {
  std::istream* in = &std::cin;
  std::ifstream file;
  if (in_path != "-") {
    file.open(in_path);
    if (!file) throw fairlens::Error("cannot open " + in_path);
    in = &file;
  }
  std::ostringstream out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(*in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw fairlens::ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    fairlens::SpeakerTurn turn;
    turn.speaker_id = row.at("speaker_id").get<std::string>();
    turn.start_s = row.at("start_s").get<double>();
    turn.end_s = row.at("end_s").get<double>();
    const auto plan = fairlens::split_turn(turn, cap);
    std::size_t part = 0;
    for (const auto& [start, end] : plan.parts) {
      nlohmann::json item;
      item["speaker_id"] = turn.speaker_id;
      item["part"] = part++;
      item["start_s"] = start;
      item["end_s"] = end;
      out << item.dump() << "\n";
    }
  }
  write_file(out_path, out.str());
  return kExitOk;
}

int run_transcribe(const std::string& command, const std::string& audio_list,
                   const std::string& model_id, const std::string& out_path) {
  std::ifstream in(audio_list);
  if (!in) throw fairlens::Error("cannot open " + audio_list);
  std::vector<fairlens::TranscriberItem> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw fairlens::ParseError("expected 'instance_id<TAB>audio_path'", lineno);
    }
    items.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  const auto result = fairlens::transcribe_with_command(command, items, model_id);
  fairlens::save_hypotheses(result.hypotheses, out_path);
  for (const auto& id : result.failed_instance_ids) {
    std::cerr << "fairlens: transcription failed for instance " << id << "\n";
  }
  std::cerr << "fairlens: " << result.hypotheses.size() << " transcribed, "
            << result.failed_instance_ids.size() << " failed\n";
  return result.failed_instance_ids.empty() ? kExitOk : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairlens: ASR transcription quality and fairness auditing"};
  app.set_version_flag("--version", std::string(fairlens::kVersion));
  app.require_subcommand(1);

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "Run the full evaluation pipeline");
  eval->add_option("--manifest", eval_opt.manifest, "Corpus manifest (.tsv or .jsonl)")
      ->required();
  eval->add_option("--hypotheses", eval_opt.hypotheses, "Hypotheses JSONL")->required();
  eval->add_option("--embeddings", eval_opt.embeddings, "Sidecar embeddings JSONL");
  eval->add_option("--embedding-command", eval_opt.embedding_command,
                   "Command printing one embedding vector per input line");
  eval->add_option("--group-by", eval_opt.group_by, "gender, age_band, or accent")
      ->capture_default_str();
  eval->add_option("--category-by", eval_opt.category_by,
                   "Manifest column splitting reports into categories");
  eval->add_option("--epsilon", eval_opt.epsilon, "WER parity bound (1 + epsilon)")
      ->capture_default_str();
  eval->add_option("--alpha", eval_opt.alpha, "Assumption-check significance level")
      ->capture_default_str();
  eval->add_option("--min-group", eval_opt.min_group,
                   "Minimum instances for a representative group")
      ->capture_default_str();
  eval->add_option("--metrics", eval_opt.metrics, "Comma-separated subset of wer,cer,bss")
      ->capture_default_str();
  eval->add_option("--format", eval_opt.manifest_format,
                   "Manifest format override (tsv or jsonl)");
  eval->add_flag("--remove-diacritics", eval_opt.remove_diacritics,
                 "Strip combining marks during normalization");
  eval->add_flag("--keep-brackets", eval_opt.keep_brackets,
                 "Do not delete [...] and (...) spans during normalization");
  eval->add_option("--out", eval_opt.out, "Report JSON path ('-' for stdout)")->required();
  eval->add_option("--markdown", eval_opt.markdown, "Also render a markdown report");

  bool norm_diacritics = false;
  bool norm_keep_brackets = false;
  auto* normalize = app.add_subcommand(
      "normalize", "Normalize text lines from standard input to standard output");
  normalize->add_flag("--remove-diacritics", norm_diacritics,
                      "Strip combining marks during normalization");
  normalize->add_flag("--keep-brackets", norm_keep_brackets,
                      "Do not delete [...] and (...) spans");

  std::string stats_path;
  double stats_alpha = 0.05;
  auto* stats = app.add_subcommand(
      "stats", "Assumption-checked testing over {group, speaker_id, value} JSONL rows");
  stats->add_option("input", stats_path, "JSONL file of per-speaker scores")->required();
  stats->add_option("--alpha", stats_alpha, "Assumption-check significance level")
      ->capture_default_str();

  std::string seg_in = "-";
  std::string seg_out = "-";
  double seg_cap = fairlens::kDefaultSegmentCapS;
  auto* segment = app.add_subcommand(
      "segment-plan", "Split speaker turns into the largest equal parts under the cap");
  segment->add_option("--in", seg_in, "Speaker turns JSONL ('-' for stdin)")
      ->capture_default_str();
  segment->add_option("--out", seg_out, "Plan JSONL ('-' for stdout)")->capture_default_str();
  segment->add_option("--cap", seg_cap, "Maximum part duration in seconds")
      ->capture_default_str();

  std::string tr_command;
  std::string tr_list;
  std::string tr_model = "external";
  std::string tr_out;
  auto* transcribe = app.add_subcommand(
      "transcribe", "Produce hypotheses by running an external ASR command per audio file");
  transcribe->add_option("--command", tr_command, "Command; the audio path is appended")
      ->required();
  transcribe->add_option("--audio-list", tr_list, "TSV of instance_id<TAB>audio_path")
      ->required();
  transcribe->add_option("--model-id", tr_model, "Model id for the emitted hypotheses")
      ->capture_default_str();
  transcribe->add_option("--out", tr_out, "Hypotheses JSONL path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(eval_opt);
    if (*normalize) return run_normalize(norm_diacritics, norm_keep_brackets);
    if (*stats) return run_stats(stats_path, stats_alpha);
    if (*segment) return run_segment_plan(seg_in, seg_out, seg_cap);
    if (*transcribe) return run_transcribe(tr_command, tr_list, tr_model, tr_out);
  } catch (const fairlens::NoTestableGroupsError& e) {
    std::cerr << "fairlens: " << e.what() << "\n";
    return kExitNoTestableGroups;
  } catch (const fairlens::Error& e) {
    std::cerr << "fairlens: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "fairlens: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
