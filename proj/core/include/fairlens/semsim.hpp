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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/types.hpp"

namespace fairlens {

using EmbeddingVector = std::vector<double>;

// Cosine similarity (a.b)/(|a||b|), in [-1, 1]. Throws ValidationError on
// dimension mismatch or a zero vector.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

enum class EmbeddingRole { kReference, kHypothesis };

std::string_view to_string(EmbeddingRole role);

struct EmbeddingKey {
  std::string instance_id;
  EmbeddingRole role;
  std::string model_id;

  auto operator<=>(const EmbeddingKey&) const = default;
};

// Source of transcript embeddings. The toolkit never runs an embedding model
// in-process; vectors come from a sidecar file or an external command.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // The text is supplied so command-backed providers can embed on demand;
  // file-backed providers ignore it. Returns nullopt when no embedding is
  // available for the key (a missing-embedding signal, not an error).
  virtual std::optional<EmbeddingVector> embedding(const EmbeddingKey& key,
                                                   std::string_view text) = 0;
};

// Reads a JSONL sidecar of
//   {"instance_id": ..., "role": "reference"|"hypothesis",
//    "model_id": ..., "vector": [floats]}
// into memory. Lookups are read-only afterwards.
class SidecarEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit SidecarEmbeddingProvider(const std::string& path);

  std::optional<EmbeddingVector> embedding(const EmbeddingKey& key,
                                           std::string_view text) override;

  std::size_t size() const { return vectors_.size(); }

 private:
  std::map<EmbeddingKey, EmbeddingVector> vectors_;
};

// Runs a configured command once per batch: requested texts are written one
// per line to the command's standard input and it must print one vector per
// line (whitespace-separated floats). A short or failed run yields
// missing-embedding signals for the unanswered keys.
class CommandEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit CommandEmbeddingProvider(std::string command);

  // Resolves all keys in one subprocess invocation; must be called before
  // embedding() for those keys.
  void prime(const std::vector<std::pair<EmbeddingKey, std::string>>& requests);

  std::optional<EmbeddingVector> embedding(const EmbeddingKey& key,
                                           std::string_view text) override;

 private:
  std::string command_;
  std::map<EmbeddingKey, EmbeddingVector> cache_;
};

// BERT-style semantic similarity of a unit: cosine similarity between its
// reference and hypothesis embeddings, or nullopt when either is missing.
std::optional<double> bss(const EvaluationUnit& unit, EmbeddingProvider& provider);

}  // namespace fairlens
