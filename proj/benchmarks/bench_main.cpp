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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "fairlens/aggregate.hpp"
#include "fairlens/align.hpp"
#include "fairlens/normalize.hpp"
#include "fairlens/stats.hpp"

namespace {

std::vector<std::string> random_tokens(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> vocab(0, 199);
  std::vector<std::string> tokens;
  tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(vocab(rng)));
  return tokens;
}

void BM_NormalizeSentence(benchmark::State& state) {
  const std::string text =
      "Dit is een [rumoer] langere testzin, met légio laeçons (gelach) en "
      "cijfers als 12:30 uur — z'n gebruikelijke interpunctie!";
  for (auto _ : state) {
    benchmark::DoNotOptimize(fairlens::normalize_text(text));
  }
}
BENCHMARK(BM_NormalizeSentence);

void BM_EditDistanceWords(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto ref = random_tokens(static_cast<std::size_t>(state.range(0)), rng);
  auto hyp = ref;
  std::uniform_int_distribution<std::size_t> pos(0, hyp.size() - 1);
  for (std::size_t i = 0; i < hyp.size() / 5; ++i) hyp[pos(rng)] = "xx";
  for (auto _ : state) {
    benchmark::DoNotOptimize(fairlens::edit_distance(ref, hyp));
  }
}
BENCHMARK(BM_EditDistanceWords)->Arg(20)->Arg(100)->Arg(500);

void BM_AlignWithBacktrace(benchmark::State& state) {
  std::mt19937 rng(2);
  const auto ref = random_tokens(static_cast<std::size_t>(state.range(0)), rng);
  const auto hyp = random_tokens(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fairlens::align(ref, hyp));
  }
}
BENCHMARK(BM_AlignWithBacktrace)->Arg(20)->Arg(100);

void BM_ShapiroWilk(benchmark::State& state) {
  std::mt19937 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = normal(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fairlens::shapiro_wilk(values));
  }
}
BENCHMARK(BM_ShapiroWilk)->Arg(30)->Arg(300)->Arg(3000);

void BM_SelectAndTest(benchmark::State& state) {
  std::mt19937 rng(4);
  std::normal_distribution<double> normal(0.3, 0.1);
  fairlens::Sample a{"a", {}};
  fairlens::Sample b{"b", {}};
  for (int i = 0; i < state.range(0); ++i) {
    a.values.push_back(normal(rng));
    b.values.push_back(normal(rng) + 0.02);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fairlens::select_and_test({a, b}));
  }
}
BENCHMARK(BM_SelectAndTest)->Arg(50)->Arg(500);

void BM_MannWhitneyExact(benchmark::State& state) {
  fairlens::Sample a{"a", {}};
  fairlens::Sample b{"b", {}};
  for (int i = 0; i < 10; ++i) {
    a.values.push_back(i * 2.0);
    b.values.push_back(i * 2.0 + 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fairlens::mann_whitney_u(a, b, fairlens::MannWhitneyMode::kExact));
  }
}
BENCHMARK(BM_MannWhitneyExact);

void BM_WeightedMean(benchmark::State& state) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::vector<fairlens::WeightedScore> scores(10000);
  for (auto& s : scores) s = {value(rng), 1.0 + value(rng) * 20.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fairlens::weighted_mean(scores));
  }
}
BENCHMARK(BM_WeightedMean);

}  // namespace

BENCHMARK_MAIN();
