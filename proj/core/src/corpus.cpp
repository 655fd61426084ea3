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

#include "fairlens/corpus.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "fairlens/error.hpp"

namespace fairlens {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 7> kManifestColumns = {
    "instance_id", "speaker_id", "reference", "gender",
    "duration_s",  "age_band",   "accent"};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string chomp(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_duration(const std::string& field, std::size_t lineno) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("invalid duration_s '" + field + "'", lineno);
  }
  if (value < 0.0) throw ParseError("duration_s must be nonnegative", lineno);
  return value;
}

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void check_duplicate_ids(const std::vector<TranscriptInstance>& instances) {
  std::unordered_set<std::string> seen;
  for (const auto& inst : instances) {
    if (!seen.insert(inst.instance_id).second) {
      throw ValidationError("duplicate instance_id '" + inst.instance_id + "'");
    }
  }
}

std::vector<TranscriptInstance> load_manifest_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty manifest, missing header", 1);
  const auto header = split_tabs(chomp(line));
  if (header.size() < 5) {
    throw ParseError("manifest header needs at least the 5 required columns", 1);
  }
  const std::size_t fixed = std::min<std::size_t>(header.size(), kManifestColumns.size());
  for (std::size_t i = 0; i < fixed; ++i) {
    if (header[i] != kManifestColumns[i]) {
      throw ParseError("header column " + std::to_string(i + 1) + " must be '" +
                           kManifestColumns[i] + "', got '" + header[i] + "'",
                       1);
    }
  }
  std::set<std::string> extra_names;
  for (std::size_t i = kManifestColumns.size(); i < header.size(); ++i) {
    if (header[i].empty() || !extra_names.insert(header[i]).second) {
      throw ParseError("invalid or duplicate extra column '" + header[i] + "'", 1);
    }
  }

  std::vector<TranscriptInstance> instances;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = chomp(line);
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    }
    TranscriptInstance inst;
    inst.instance_id = fields[0];
    inst.speaker_id = fields[1];
    inst.reference_text = fields[2];
    if (inst.instance_id.empty()) throw ParseError("empty instance_id", lineno);
    if (inst.speaker_id.empty()) throw ParseError("empty speaker_id", lineno);
    inst.gender = gender_from_string(fields[3]);
    if (!fields[4].empty()) inst.duration_s = parse_duration(fields[4], lineno);
    if (fields.size() > 5 && !fields[5].empty()) inst.age_band = fields[5];
    if (fields.size() > 6 && !fields[6].empty()) inst.accent = fields[6];
    for (std::size_t i = kManifestColumns.size(); i < fields.size(); ++i) {
      if (!fields[i].empty()) inst.extras[header[i]] = fields[i];
    }
    instances.push_back(std::move(inst));
  }
  check_duplicate_ids(instances);
  return instances;
}

json parse_json_line(const std::string& line, std::size_t lineno) {
  try {
    json row = json::parse(line);
    if (!row.is_object()) throw ParseError("expected a JSON object", lineno);
    return row;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
  }
}

std::string require_string(const json& row, const char* key, std::size_t lineno) {
  if (!row.contains(key) || !row[key].is_string()) {
    throw ParseError(std::string("missing or non-string field '") + key + "'", lineno);
  }
  return row[key].get<std::string>();
}

std::vector<TranscriptInstance> load_manifest_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest: " + path);
  std::vector<TranscriptInstance> instances;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = chomp(line);
    if (line.empty()) continue;
    const json row = parse_json_line(line, lineno);
    TranscriptInstance inst;
    inst.instance_id = require_string(row, "instance_id", lineno);
    inst.speaker_id = require_string(row, "speaker_id", lineno);
    inst.reference_text = require_string(row, "reference", lineno);
    if (inst.instance_id.empty()) throw ParseError("empty instance_id", lineno);
    if (inst.speaker_id.empty()) throw ParseError("empty speaker_id", lineno);
    for (const auto& [key, value] : row.items()) {
      if (key == "instance_id" || key == "speaker_id" || key == "reference") continue;
      if (value.is_null()) continue;
      if (key == "gender") {
        if (!value.is_string()) throw ParseError("gender must be a string", lineno);
        inst.gender = gender_from_string(value.get<std::string>());
      } else if (key == "duration_s") {
        if (!value.is_number()) throw ParseError("duration_s must be a number", lineno);
        const double d = value.get<double>();
        if (d < 0.0) throw ParseError("duration_s must be nonnegative", lineno);
        inst.duration_s = d;
      } else if (key == "age_band" || key == "accent") {
        if (!value.is_string()) throw ParseError(key + " must be a string", lineno);
        const auto s = value.get<std::string>();
        if (!s.empty()) (key == "age_band" ? inst.age_band : inst.accent) = s;
      } else {
        if (!value.is_string()) {
          throw ParseError("extra field '" + key + "' must be a string", lineno);
        }
        const auto s = value.get<std::string>();
        if (!s.empty()) inst.extras[key] = s;
      }
    }
    instances.push_back(std::move(inst));
  }
  check_duplicate_ids(instances);
  return instances;
}

void save_manifest_tsv(const std::vector<TranscriptInstance>& instances,
                       const std::string& path) {
  std::set<std::string> extra_names;
  for (const auto& inst : instances) {
    for (const auto& [key, value] : inst.extras) extra_names.insert(key);
  }
  auto check_cell = [](const std::string& cell) {
    if (cell.find('\t') != std::string::npos || cell.find('\n') != std::string::npos) {
      throw ValidationError("TSV cell may not contain tabs or newlines: '" + cell + "'");
    }
    return cell;
  };
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest: " + path);
  for (std::size_t i = 0; i < kManifestColumns.size(); ++i) {
    if (i) out << '\t';
    out << kManifestColumns[i];
  }
  for (const auto& name : extra_names) out << '\t' << check_cell(name);
  out << '\n';
  for (const auto& inst : instances) {
    out << check_cell(inst.instance_id) << '\t' << check_cell(inst.speaker_id) << '\t'
        << check_cell(inst.reference_text) << '\t'
        << (inst.gender == Gender::kUnknown ? "" : to_string(inst.gender)) << '\t'
        << (inst.duration_s ? format_double(*inst.duration_s) : "") << '\t'
        << (inst.age_band ? check_cell(*inst.age_band) : "") << '\t'
        << (inst.accent ? check_cell(*inst.accent) : "");
    for (const auto& name : extra_names) {
      auto it = inst.extras.find(name);
      out << '\t' << (it == inst.extras.end() ? "" : check_cell(it->second));
    }
    out << '\n';
  }
}

void save_manifest_jsonl(const std::vector<TranscriptInstance>& instances,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest: " + path);
  for (const auto& inst : instances) {
    json row;
    row["instance_id"] = inst.instance_id;
    row["speaker_id"] = inst.speaker_id;
    row["reference"] = inst.reference_text;
    if (inst.gender != Gender::kUnknown) row["gender"] = std::string(to_string(inst.gender));
    if (inst.duration_s) row["duration_s"] = *inst.duration_s;
    if (inst.age_band) row["age_band"] = *inst.age_band;
    if (inst.accent) row["accent"] = *inst.accent;
    for (const auto& [key, value] : inst.extras) row[key] = value;
    out << row.dump() << '\n';
  }
}

}  // namespace

ManifestFormat manifest_format_from_path(const std::string& path) {
  const std::size_t dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "tsv" || ext == "txt") return ManifestFormat::kTsv;
  if (ext == "jsonl" || ext == "json") return ManifestFormat::kJsonl;
  throw ValidationError("cannot infer manifest format from '" + path +
                        "' (expected .tsv, .txt, .jsonl, or .json)");
}

std::vector<TranscriptInstance> load_manifest(const std::string& path, ManifestFormat format) {
  return format == ManifestFormat::kTsv ? load_manifest_tsv(path) : load_manifest_jsonl(path);
}

void save_manifest(const std::vector<TranscriptInstance>& instances, const std::string& path,
                   ManifestFormat format) {
  if (format == ManifestFormat::kTsv) {
    save_manifest_tsv(instances, path);
  } else {
    save_manifest_jsonl(instances, path);
  }
}

std::vector<Hypothesis> load_hypotheses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open hypotheses: " + path);
  std::vector<Hypothesis> hypotheses;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = chomp(line);
    if (line.empty()) continue;
    const json row = parse_json_line(line, lineno);
    Hypothesis hyp;
    hyp.instance_id = require_string(row, "instance_id", lineno);
    hyp.model_id = require_string(row, "model_id", lineno);
    hyp.text = require_string(row, "text", lineno);
    if (hyp.instance_id.empty()) throw ParseError("empty instance_id", lineno);
    if (hyp.model_id.empty()) throw ParseError("empty model_id", lineno);
    if (!seen.insert({hyp.instance_id, hyp.model_id}).second) {
      throw ValidationError("duplicate hypothesis for (" + hyp.instance_id + ", " +
                            hyp.model_id + ")");
    }
    hypotheses.push_back(std::move(hyp));
  }
  return hypotheses;
}

void save_hypotheses(const std::vector<Hypothesis>& hypotheses, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write hypotheses: " + path);
  for (const auto& hyp : hypotheses) {
    json row;
    row["instance_id"] = hyp.instance_id;
    row["model_id"] = hyp.model_id;
    row["text"] = hyp.text;
    out << row.dump() << '\n';
  }
}

JoinResult join_dataset(const std::vector<TranscriptInstance>& instances,
                        const std::vector<Hypothesis>& hypotheses,
                        const NormalizerConfig& normalizer) {
  std::unordered_map<std::string, const TranscriptInstance*> by_id;
  by_id.reserve(instances.size());
  for (const auto& inst : instances) by_id[inst.instance_id] = &inst;

  JoinResult result;
  // normalized references are shared across models; cache per instance
  std::unordered_map<std::string, std::string> normalized_ref;
  for (const auto& hyp : hypotheses) {
    auto it = by_id.find(hyp.instance_id);
    if (it == by_id.end()) {
      ++result.unresolved_hypotheses;
      if (result.warnings.size() < 20) {
        result.warnings.push_back("hypothesis for unknown instance_id '" + hyp.instance_id +
                                  "' dropped");
      }
      continue;
    }
    EvaluationUnit unit;
    unit.instance = *it->second;
    unit.model_id = hyp.model_id;
    unit.hypothesis_text = hyp.text;
    auto ref_it = normalized_ref.find(hyp.instance_id);
    if (ref_it == normalized_ref.end()) {
      ref_it = normalized_ref
                   .emplace(hyp.instance_id,
                            normalize_text(it->second->reference_text, normalizer))
                   .first;
    }
    unit.normalized_reference = ref_it->second;
    unit.normalized_hypothesis = normalize_text(hyp.text, normalizer);
    result.units.push_back(std::move(unit));
  }
  if (result.units.empty()) {
    throw ValidationError("join produced no evaluation units: no hypothesis matched an instance");
  }
  return result;
}

FilterResult filter_unrepresentative_groups(const std::vector<EvaluationUnit>& units,
                                            GroupAttribute attribute,
                                            std::size_t min_instances) {
  if (min_instances == 0) throw ValidationError("min_instances must be positive");
  std::map<std::string, std::set<std::string>> group_instances;
  for (const auto& unit : units) {
    group_instances[group_value(unit.instance, attribute)].insert(unit.instance.instance_id);
  }
  std::set<std::string> excluded;
  FilterResult result;
  for (const auto& [group, ids] : group_instances) {
    if (group == kUnknownGroup || ids.size() < min_instances) {
      excluded.insert(group);
      result.excluded_groups.emplace_back(group, ids.size());
    }
  }
  for (const auto& unit : units) {
    if (!excluded.contains(group_value(unit.instance, attribute))) {
      result.kept.push_back(unit);
    }
  }
  return result;
}

TranscriberResult transcribe_with_command(const std::string& command,
                                          const std::vector<TranscriberItem>& items,
                                          const std::string& model_id) {
  if (command.empty()) throw ValidationError("transcriber command must not be empty");
  TranscriberResult result;
  for (const auto& item : items) {
    // single-quote the path for the shell
    std::string quoted = "'";
    for (char c : item.audio_path) {
      if (c == '\'') {
        quoted += "'\\''";
      } else {
        quoted += c;
      }
    }
    quoted += "'";
    const std::string cmd = command + " " + quoted;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
      result.failed_instance_ids.push_back(item.instance_id);
      continue;
    }
    std::string output;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
      output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    if (status != 0) {
      result.failed_instance_ids.push_back(item.instance_id);
      continue;
    }
    while (!output.empty() && (output.back() == '\n' || output.back() == '\r')) {
      output.pop_back();
    }
    result.hypotheses.push_back({item.instance_id, model_id, output});
  }
  return result;
}

}  // namespace fairlens
