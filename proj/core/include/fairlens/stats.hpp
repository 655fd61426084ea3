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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairlens {

// One group's per-speaker scores.
struct Sample {
  std::string group;
  std::vector<double> values;
};

enum class TestName {
  kShapiroWilk,
  kLevene,
  kStudentT,
  kWelchT,
  kMannWhitneyU,
  kAnova,
  kWelchAnova,
  kKruskalWallis,
};

std::string_view to_string(TestName name);
std::optional<TestName> test_name_from_string(std::string_view s);

struct TestResult {
  TestName name = TestName::kShapiroWilk;
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> df1;
  std::optional<double> df2;
};

// Shapiro-Wilk normality test, Royston's AS R94 approximation.
// Requires 3 <= n <= 5000; throws ValidationError otherwise or on a
// zero-variance sample.
TestResult shapiro_wilk(const std::vector<double>& values);

enum class LeveneCenter { kMean, kMedian };

// Levene's homogeneity-of-variance test (classic mean-centered form by
// default). Requires >= 2 samples with n >= 2 each.
TestResult levene(const std::vector<Sample>& samples,
                  LeveneCenter center = LeveneCenter::kMean);

// Two-sided two-sample t-tests. Zero-variance conventions: equal means give
// p = 1, unequal means give p = 0.
TestResult student_t(const Sample& a, const Sample& b);
TestResult welch_t(const Sample& a, const Sample& b);

enum class MannWhitneyMode { kExact, kNormalApprox, kAuto };

// Two-sided Mann-Whitney U. Exact mode enumerates the permutation null
// (tie-free samples with n_a + n_b <= 20); the normal approximation applies
// tie and continuity corrections. Auto picks exact when feasible. The
// reported statistic is U of the first sample.
TestResult mann_whitney_u(const Sample& a, const Sample& b,
                          MannWhitneyMode mode = MannWhitneyMode::kAuto);

// k-sample location tests; >= 2 samples with n >= 2 each.
TestResult one_way_anova(const std::vector<Sample>& samples);
TestResult welch_anova(const std::vector<Sample>& samples);
TestResult kruskal_wallis(const std::vector<Sample>& samples);

// "***" p < 0.001, "**" p < 0.01, "*" p < 0.05, "" otherwise.
std::string significance_stars(double p_value);

// Record of the assumption-checked test selection: which normality and
// variance checks ran, which test was chosen and why, and its result.
struct DecisionTrace {
  bool testable = false;
  std::string note;
  std::vector<std::pair<std::string, TestResult>> normality;  // per group
  std::optional<TestResult> variance;
  std::optional<TestName> chosen_test;
  std::optional<TestResult> final;
  std::string stars;
};

// Runs Shapiro-Wilk per group and Levene across groups at alpha_assumption,
// then picks the comparison test:
//   two groups:   normal & homoscedastic -> Student t
//                 normal & heteroscedastic -> Welch t
//                 any non-normal -> Mann-Whitney U
//   three+ groups: normal & homoscedastic -> one-way ANOVA
//                 normal & heteroscedastic -> Welch ANOVA
//                 any non-normal -> Kruskal-Wallis
// Groups below the size minimum (3) yield an untestable trace, not an error.
DecisionTrace select_and_test(const std::vector<Sample>& samples,
                              double alpha_assumption = 0.05);

}  // namespace fairlens
