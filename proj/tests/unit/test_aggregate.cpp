#include <doctest.h>

#include <algorithm>
#include <random>

#include "fairlens/aggregate.hpp"
#include "fairlens/error.hpp"

using namespace fairlens;

namespace {

ScoredInstance scored(const char* id, const char* speaker, const char* group,
                      std::size_t errors, std::size_t ref_len) {
  ScoredInstance s;
  s.instance_id = id;
  s.speaker_id = speaker;
  s.group = group;
  s.word_errors = errors;
  s.word_ref_len = ref_len;
  s.wer = static_cast<double>(errors) / static_cast<double>(ref_len);
  s.char_errors = errors * 4;
  s.char_ref_len = ref_len * 5;
  s.cer = static_cast<double>(s.char_errors) / static_cast<double>(s.char_ref_len);
  return s;
}

}  // namespace

TEST_CASE("weighted_mean worked examples") {
  CHECK(weighted_mean({{0.5, 1.0}, {0.1, 1.0}}) == doctest::Approx(0.3));
  CHECK(weighted_mean({{0.5, 2.0}, {0.0, 8.0}}) == doctest::Approx(0.1));
  CHECK(weighted_mean({{0.42, 17.0}}) == doctest::Approx(0.42));
  CHECK_THROWS_AS(weighted_mean({}), ValidationError);
  CHECK_THROWS_AS(weighted_mean({{1.0, 0.0}}), ValidationError);
}

TEST_CASE("weighted_mean properties") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> value(0.0, 2.0);
  std::uniform_real_distribution<double> weight(0.1, 9.0);
  for (int iter = 0; iter < 300; ++iter) {
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::vector<WeightedScore> scores(size(rng));
    for (auto& s : scores) s = {value(rng), weight(rng)};
    const double m = weighted_mean(scores);
    double lo = scores[0].value;
    double hi = scores[0].value;
    for (const auto& s : scores) {
      lo = std::min(lo, s.value);
      hi = std::max(hi, s.value);
    }
    CHECK(m >= lo - 1e-12);
    CHECK(m <= hi + 1e-12);

    // invariance under uniform weight scaling
    auto scaled = scores;
    for (auto& s : scaled) s.weight *= 37.5;
    CHECK(weighted_mean(scaled) == doctest::Approx(m).epsilon(1e-12));

    // merging two disjoint halves lands between the half means
    if (scores.size() >= 2) {
      const std::size_t cut = scores.size() / 2;
      std::vector<WeightedScore> left(scores.begin(), scores.begin() + cut);
      std::vector<WeightedScore> right(scores.begin() + cut, scores.end());
      if (!left.empty() && !right.empty()) {
        const double ml = weighted_mean(left);
        const double mr = weighted_mean(right);
        CHECK(m >= std::min(ml, mr) - 1e-12);
        CHECK(m <= std::max(ml, mr) + 1e-12);
      }
    }
  }
}

TEST_CASE("per_speaker_scores aggregates within speakers") {
  std::vector<ScoredInstance> insts;
  insts.push_back(scored("u1", "spkA", "female", 1, 5));  // wer 0.2, w=5
  insts.push_back(scored("u2", "spkA", "female", 2, 5));  // wer 0.4, w=5
  insts.push_back(scored("u3", "spkB", "female", 0, 7));
  const auto speakers = per_speaker_scores(insts, Metric::kWer);
  REQUIRE(speakers.size() == 2);
  CHECK(speakers[0].speaker_id == "spkA");
  CHECK(speakers[0].value == doctest::Approx(0.3));
  CHECK(speakers[0].instance_count == 2);
  CHECK(speakers[0].total_weight == doctest::Approx(10.0));
  CHECK(speakers[1].speaker_id == "spkB");
  CHECK(speakers[1].value == 0.0);

  // one speaker, one instance: value equals the instance score
  const auto single = per_speaker_scores({scored("u9", "solo", "male", 3, 10)}, Metric::kWer);
  REQUIRE(single.size() == 1);
  CHECK(single[0].value == doctest::Approx(0.3));
}

TEST_CASE("per_speaker_scores skips instances without bss") {
  auto a = scored("u1", "s1", "g", 1, 4);
  auto b = scored("u2", "s1", "g", 1, 4);
  b.bss = 0.9;
  const auto speakers = per_speaker_scores({a, b}, Metric::kBss);
  REQUIRE(speakers.size() == 1);
  CHECK(speakers[0].value == doctest::Approx(0.9));
  CHECK(speakers[0].instance_count == 1);
}

TEST_CASE("group_summary pools error counts over reference lengths") {
  std::vector<ScoredInstance> insts;
  // S+D+I totals 9 over N totals 100 -> 0.09
  insts.push_back(scored("u1", "s1", "female", 4, 40));
  insts.push_back(scored("u2", "s2", "female", 5, 60));
  insts.push_back(scored("u3", "s3", "male", 3, 10));
  const auto groups = group_summary(insts, "medium");
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].group == "female");
  CHECK(groups[0].weighted_wer == doctest::Approx(0.09));
  CHECK(groups[0].instance_count == 2);
  CHECK(groups[0].speaker_count == 2);
  CHECK(groups[0].model_id == "medium");
  CHECK(groups[1].group == "male");
  CHECK(groups[1].weighted_wer == doctest::Approx(0.3));
  CHECK(groups[1].instance_count == 1);
}

TEST_CASE("group_summary reproduces the published medium-row gender summary") {
  // per-instance data constructed to pool to 0.079 (female) and 0.088 (male)
  std::vector<ScoredInstance> insts;
  insts.push_back(scored("f1", "fs1", "female", 40, 500));
  insts.push_back(scored("f2", "fs2", "female", 39, 500));
  insts.push_back(scored("m1", "ms1", "male", 50, 600));
  insts.push_back(scored("m2", "ms2", "male", 38, 400));
  const auto groups = group_summary(insts, "medium");
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].weighted_wer == doctest::Approx(0.079).epsilon(1e-12));
  CHECK(groups[1].weighted_wer == doctest::Approx(0.088).epsilon(1e-12));

  const auto delta = bias_delta(groups[0], groups[1]);
  CHECK(delta.absolute == doctest::Approx(0.009).epsilon(1e-9));
  REQUIRE(delta.relative.has_value());
  CHECK(*delta.relative == doctest::Approx(0.114).epsilon(1e-2));
}

TEST_CASE("pooling equivalence: group mean equals weighted mean of instance scores") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  std::uniform_int_distribution<std::size_t> speaker(0, 5);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<ScoredInstance> insts;
    std::vector<WeightedScore> scores;
    std::uniform_int_distribution<std::size_t> count(1, 40);
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ref_len = len(rng);
      std::uniform_int_distribution<std::size_t> errs(0, ref_len + 2);
      auto inst = scored(("u" + std::to_string(i)).c_str(),
                         ("s" + std::to_string(speaker(rng))).c_str(), "g", errs(rng), ref_len);
      scores.push_back({inst.wer, inst.weight()});
      insts.push_back(std::move(inst));
    }
    const auto groups = group_summary(insts, "m");
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].weighted_wer == doctest::Approx(weighted_mean(scores)).epsilon(1e-12));
  }
}

TEST_CASE("bias_delta worked examples") {
  const auto medium = bias_delta(0.079, 0.088);
  CHECK(medium.absolute == doctest::Approx(0.009).epsilon(1e-9));
  CHECK(*medium.relative == doctest::Approx(0.114).epsilon(1e-2));

  const auto large = bias_delta(0.067, 0.074);
  CHECK(large.absolute == doctest::Approx(0.007).epsilon(1e-9));
  CHECK(*large.relative == doctest::Approx(0.105).epsilon(1e-2));

  const auto same = bias_delta(0.31, 0.31);
  CHECK(same.absolute == 0.0);
  CHECK(*same.relative == 0.0);

  const auto zero = bias_delta(0.0, 0.2);
  CHECK(zero.absolute == doctest::Approx(0.2));
  CHECK(!zero.relative.has_value());  // undefined against a zero baseline

  // symmetry
  const auto ab = bias_delta(0.4, 0.25);
  const auto ba = bias_delta(0.25, 0.4);
  CHECK(ab.absolute == ba.absolute);
  CHECK(*ab.relative == *ba.relative);
}
