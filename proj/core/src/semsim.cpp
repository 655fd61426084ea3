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

#include "fairlens/semsim.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fairlens/error.hpp"

namespace fairlens {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size()) {
    throw ValidationError("cosine: dimension mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw ValidationError("cosine: empty vectors");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine: zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::string_view to_string(EmbeddingRole role) {
  return role == EmbeddingRole::kReference ? "reference" : "hypothesis";
}

namespace {

EmbeddingRole role_from_string(const std::string& s, std::size_t line) {
  if (s == "reference") return EmbeddingRole::kReference;
  if (s == "hypothesis") return EmbeddingRole::kHypothesis;
  throw ParseError("embedding role must be reference or hypothesis, got '" + s + "'", line);
}

}  // namespace

SidecarEmbeddingProvider::SidecarEmbeddingProvider(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embeddings file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!row.contains("instance_id") || !row.contains("role") ||
        !row.contains("model_id") || !row.contains("vector")) {
      throw ParseError("embedding row needs instance_id, role, model_id, vector", lineno);
    }
    EmbeddingKey key{row["instance_id"].get<std::string>(),
                     role_from_string(row["role"].get<std::string>(), lineno),
                     row["model_id"].get<std::string>()};
    EmbeddingVector vec = row["vector"].get<EmbeddingVector>();
    if (vec.empty()) throw ParseError("empty embedding vector", lineno);
    if (!vectors_.emplace(std::move(key), std::move(vec)).second) {
      throw ParseError("duplicate embedding key", lineno);
    }
  }
}

std::optional<EmbeddingVector> SidecarEmbeddingProvider::embedding(const EmbeddingKey& key,
                                                                   std::string_view) {
  auto it = vectors_.find(key);
  if (it == vectors_.end()) return std::nullopt;
  return it->second;
}

CommandEmbeddingProvider::CommandEmbeddingProvider(std::string command)
    : command_(std::move(command)) {}

void CommandEmbeddingProvider::prime(
    const std::vector<std::pair<EmbeddingKey, std::string>>& requests) {
  if (requests.empty()) return;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path in_path = dir / ("fairlens_embed_in_" + std::to_string(::getpid()) + ".txt");
  const fs::path out_path = dir / ("fairlens_embed_out_" + std::to_string(::getpid()) + ".txt");
  {
    std::ofstream in(in_path);
    for (const auto& [key, text] : requests) in << text << "\n";
  }
  const std::string cmd = command_ + " < " + in_path.string() + " > " + out_path.string();
  const int rc = std::system(cmd.c_str());
  std::ifstream out(out_path);
  std::string line;
  std::size_t i = 0;
  while (i < requests.size() && std::getline(out, line)) {
    EmbeddingVector vec;
    std::istringstream fields(line);
    double v;
    while (fields >> v) vec.push_back(v);
    if (!vec.empty()) cache_[requests[i].first] = std::move(vec);
    ++i;
  }
  fs::remove(in_path);
  fs::remove(out_path);
  if (rc != 0) {
    throw Error("embedding command failed with status " + std::to_string(rc) + ": " + command_);
  }
}

std::optional<EmbeddingVector> CommandEmbeddingProvider::embedding(const EmbeddingKey& key,
                                                                   std::string_view) {
  auto it = cache_.find(key);
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> bss(const EvaluationUnit& unit, EmbeddingProvider& provider) {
  const auto ref = provider.embedding(
      {unit.instance.instance_id, EmbeddingRole::kReference, unit.model_id},
      unit.normalized_reference);
  if (!ref) return std::nullopt;
  const auto hyp = provider.embedding(
      {unit.instance.instance_id, EmbeddingRole::kHypothesis, unit.model_id},
      unit.normalized_hypothesis);
  if (!hyp) return std::nullopt;
  return cosine_similarity(*ref, *hyp);
}

}  // namespace fairlens
