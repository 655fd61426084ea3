#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fairlens/error.hpp"
#include "fairlens/stats.hpp"
#include "support/oracles.hpp"
#include "support/stat_fixtures.hpp"

using namespace fairlens;

namespace {

Sample make(const char* group, std::vector<double> values) {
  return {group, std::move(values)};
}

}  // namespace

TEST_CASE("shapiro_wilk matches the frozen reference fixtures") {
  struct Case {
    const std::vector<double>* data;
    double w;
    double p;
  };
  const Case cases[] = {
      {&fixtures::sw_normal20, fixtures::sw_normal20_w, fixtures::sw_normal20_p},
      {&fixtures::sw_heavy20, fixtures::sw_heavy20_w, fixtures::sw_heavy20_p},
      {&fixtures::sw_3pt, fixtures::sw_3pt_w, fixtures::sw_3pt_p},
      {&fixtures::sw_n4, fixtures::sw_n4_w, fixtures::sw_n4_p},
      {&fixtures::sw_n11, fixtures::sw_n11_w, fixtures::sw_n11_p},
      {&fixtures::sw_n12, fixtures::sw_n12_w, fixtures::sw_n12_p},
      {&fixtures::sw_uniform50, fixtures::sw_uniform50_w, fixtures::sw_uniform50_p},
      {&fixtures::sw_n300, fixtures::sw_n300_w, fixtures::sw_n300_p},
  };
  for (const auto& c : cases) {
    const auto r = shapiro_wilk(*c.data);
    CHECK(r.statistic == doctest::Approx(c.w).epsilon(1e-6));
    CHECK(r.p_value == doctest::Approx(c.p).epsilon(1e-4));
  }
  // heavy-tailed sample is detected
  CHECK(shapiro_wilk(fixtures::sw_heavy20).p_value < 0.05);
  // near-normal tiny sample: W close to 1
  CHECK(shapiro_wilk({-1.0, 0.0, 1.0}).statistic > 0.99);
}

TEST_CASE("shapiro_wilk rejects unsupported and degenerate samples") {
  CHECK_THROWS_AS(shapiro_wilk({1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(5001, 0.5)), ValidationError);
  CHECK_THROWS_AS(shapiro_wilk({2.0, 2.0, 2.0, 2.0}), ValidationError);
}

TEST_CASE("levene matches the frozen reference fixtures") {
  const auto r =
      levene({make("a", fixtures::levene_a), make("b", fixtures::levene_b)});
  CHECK(r.statistic == doctest::Approx(fixtures::levene_ab_w).epsilon(1e-8));
  CHECK(r.p_value == doctest::Approx(fixtures::levene_ab_p).epsilon(1e-4));
  CHECK(r.p_value < 0.01);

  const auto eq = levene({make("a", fixtures::levene_eq3_0), make("b", fixtures::levene_eq3_1),
                          make("c", fixtures::levene_eq3_2)});
  CHECK(eq.statistic == doctest::Approx(fixtures::levene_eq3_w).epsilon(1e-8));
  CHECK(eq.p_value == doctest::Approx(fixtures::levene_eq3_p).epsilon(1e-4));

  const auto med = levene({make("a", fixtures::levene_a), make("b", fixtures::levene_b)},
                          LeveneCenter::kMedian);
  CHECK(med.statistic == doctest::Approx(fixtures::levene_ab_median_w).epsilon(1e-8));
  CHECK(med.p_value == doctest::Approx(fixtures::levene_ab_median_p).epsilon(1e-4));
}

TEST_CASE("levene edge cases") {
  const auto same = levene({make("a", {1.0, 2.0, 3.0}), make("b", {1.0, 2.0, 3.0})});
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK_THROWS_AS(levene({make("a", {1.0, 2.0})}), ValidationError);
}

TEST_CASE("student t matches the hand-computed example") {
  const auto r = student_t(make("a", {1.0, 2.0, 3.0}), make("b", {2.0, 3.0, 4.0}));
  CHECK(r.statistic == doctest::Approx(-1.2247448713915890).epsilon(1e-10));
  CHECK(*r.df1 == 4.0);
  CHECK(r.p_value == doctest::Approx(0.2879).epsilon(1e-3));
  CHECK(r.p_value == doctest::Approx(fixtures::t_123_234_p).epsilon(1e-10));
}

TEST_CASE("student and welch t match the frozen reference fixtures") {
  const Sample a = make("a", fixtures::welch_a);
  const Sample b = make("b", fixtures::welch_b);
  const auto s = student_t(a, b);
  CHECK(s.statistic == doctest::Approx(fixtures::student_ab_t).epsilon(1e-10));
  CHECK(s.p_value == doctest::Approx(fixtures::student_ab_p).epsilon(1e-4));
  const auto w = welch_t(a, b);
  CHECK(w.statistic == doctest::Approx(fixtures::welch_ab_t).epsilon(1e-10));
  CHECK(w.p_value == doctest::Approx(fixtures::welch_ab_p).epsilon(1e-4));
  CHECK(*w.df1 == doctest::Approx(fixtures::welch_ab_df).epsilon(1e-10));
}

TEST_CASE("t-test conventions and identities") {
  const Sample same = make("a", {1.0, 2.0, 3.0});
  const auto r = student_t(same, make("b", {1.0, 2.0, 3.0}));
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);

  // zero variance conventions
  const auto eq = student_t(make("a", {5.0, 5.0}), make("b", {5.0, 5.0}));
  CHECK(eq.p_value == 1.0);
  const auto ne = student_t(make("a", {5.0, 5.0}), make("b", {7.0, 7.0}));
  CHECK(ne.p_value == 0.0);

  // equal sizes and equal sample variances: Welch reduces to Student
  const Sample a = make("a", {1.0, 2.0, 3.0, 4.0});
  const Sample b = make("b", {11.0, 12.0, 13.0, 14.0});
  const auto st = student_t(a, b);
  const auto we = welch_t(a, b);
  CHECK(we.statistic == doctest::Approx(st.statistic).epsilon(1e-12));
  CHECK(we.p_value == doctest::Approx(st.p_value).epsilon(1e-12));
  CHECK(*we.df1 == doctest::Approx(*st.df1).epsilon(1e-12));

  // group swap negates t exactly and preserves p
  const auto fwd = student_t(make("a", fixtures::welch_a), make("b", fixtures::welch_b));
  const auto rev = student_t(make("b", fixtures::welch_b), make("a", fixtures::welch_a));
  CHECK(fwd.statistic == -rev.statistic);
  CHECK(fwd.p_value == rev.p_value);
}

TEST_CASE("mann-whitney exact p on the worked examples") {
  const auto r1 = mann_whitney_u(make("a", {1.0, 2.0}), make("b", {3.0, 4.0}),
                                 MannWhitneyMode::kExact);
  CHECK(r1.statistic == 0.0);
  CHECK(r1.p_value == doctest::Approx(2.0 / 6.0).epsilon(1e-15));

  const auto r2 =
      mann_whitney_u(make("a", {1.5}), make("b", {2.5}), MannWhitneyMode::kExact);
  CHECK(r2.p_value == 1.0);

  // identical samples with ties: U = n_a*n_b/2
  const auto r3 = mann_whitney_u(make("a", {1.0, 2.0}), make("b", {1.0, 2.0}));
  CHECK(r3.statistic == 2.0);
}

TEST_CASE("mann-whitney matches the frozen reference fixtures") {
  const auto ex = mann_whitney_u(make("a", fixtures::mwu_exact6_a),
                                 make("b", fixtures::mwu_exact6_b), MannWhitneyMode::kExact);
  CHECK(ex.statistic == doctest::Approx(fixtures::mwu_exact6_u));
  CHECK(ex.p_value == doctest::Approx(fixtures::mwu_exact6_p).epsilon(1e-12));

  const auto ap = mann_whitney_u(make("a", {1.0, 2.0, 2.0, 3.0, 5.0}),
                                 make("b", {2.0, 3.0, 3.0, 4.0, 6.0, 6.0}),
                                 MannWhitneyMode::kNormalApprox);
  CHECK(ap.statistic == doctest::Approx(fixtures::mwu_ties_u));
  CHECK(ap.p_value == doctest::Approx(fixtures::mwu_ties_p).epsilon(1e-10));
}

TEST_CASE("mann-whitney exact equals the enumeration oracle on random samples") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  for (int iter = 0; iter < 60; ++iter) {
    std::uniform_int_distribution<std::size_t> size(1, 5);
    std::vector<double> a(size(rng));
    std::vector<double> b(size(rng));
    for (auto& v : a) v = value(rng);
    for (auto& v : b) v = value(rng);
    const auto got = mann_whitney_u(make("a", a), make("b", b), MannWhitneyMode::kExact);
    const auto want = oracles::brute_force_mwu(a, b);
    CHECK(got.statistic == want.u_statistic);
    CHECK(got.p_value == want.p_value);  // identical counts, identical division
  }
}

TEST_CASE("mann-whitney exact and normal approximation agree for n=10 vs 10") {
  std::mt19937 rng(555);
  std::normal_distribution<double> value(0.0, 1.0);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> a(10);
    std::vector<double> b(10);
    for (auto& v : a) v = value(rng);
    for (auto& v : b) v = value(rng) + 0.3;
    const auto exact = mann_whitney_u(make("a", a), make("b", b), MannWhitneyMode::kExact);
    const auto approx =
        mann_whitney_u(make("a", a), make("b", b), MannWhitneyMode::kNormalApprox);
    CHECK(std::fabs(exact.p_value - approx.p_value) < 0.02);
  }
}

TEST_CASE("mann-whitney exact mode rejects infeasible input") {
  CHECK_THROWS_AS(mann_whitney_u(make("a", {1.0, 1.0}), make("b", {1.0, 2.0}),
                                 MannWhitneyMode::kExact),
                  ValidationError);
  std::vector<double> big(15);
  std::iota(big.begin(), big.end(), 0.0);
  std::vector<double> big2(15);
  std::iota(big2.begin(), big2.end(), 20.0);
  CHECK_THROWS_AS(mann_whitney_u(make("a", big), make("b", big2), MannWhitneyMode::kExact),
                  ValidationError);
  // auto mode falls back to the approximation instead
  CHECK_NOTHROW(mann_whitney_u(make("a", big), make("b", big2)));
}

TEST_CASE("anova family matches the frozen reference fixtures") {
  const std::vector<Sample> groups = {make("a", fixtures::grp3_a), make("b", fixtures::grp3_b),
                                      make("c", fixtures::grp3_c)};
  const auto f = one_way_anova(groups);
  CHECK(f.statistic == doctest::Approx(fixtures::grp3_anova_f).epsilon(1e-8));
  CHECK(f.p_value == doctest::Approx(fixtures::grp3_anova_p).epsilon(1e-4));

  const auto w = welch_anova(groups);
  CHECK(w.statistic == doctest::Approx(fixtures::grp3_welch_f).epsilon(1e-8));
  CHECK(w.p_value == doctest::Approx(fixtures::grp3_welch_p).epsilon(1e-4));
  CHECK(*w.df2 == doctest::Approx(fixtures::grp3_welch_df2).epsilon(1e-8));

  const auto h = kruskal_wallis(groups);
  CHECK(h.statistic == doctest::Approx(fixtures::grp3_kruskal_h).epsilon(1e-8));
  CHECK(h.p_value == doctest::Approx(fixtures::grp3_kruskal_p).epsilon(1e-4));
}

TEST_CASE("anova identities and degenerate conventions") {
  const Sample s = make("x", {3.0, 4.0, 5.0});
  const auto id = one_way_anova({s, s, s});
  CHECK(id.statistic == 0.0);
  CHECK(id.p_value == 1.0);

  // two-group ANOVA F equals Student t squared with the same p
  const Sample a = make("a", fixtures::welch_a);
  const Sample b = make("b", fixtures::welch_b);
  const auto f = one_way_anova({a, b});
  const auto t = student_t(a, b);
  CHECK(f.statistic == doctest::Approx(t.statistic * t.statistic).epsilon(1e-10));
  CHECK(f.p_value == doctest::Approx(t.p_value).epsilon(1e-10));

  const auto kw_const =
      kruskal_wallis({make("a", {2.0, 2.0}), make("b", {2.0, 2.0, 2.0})});
  CHECK(kw_const.p_value == 1.0);
}

TEST_CASE("significance stars follow the thresholds") {
  CHECK(significance_stars(0.2) == "");
  CHECK(significance_stars(0.05) == "");
  CHECK(significance_stars(0.049) == "*");
  CHECK(significance_stars(0.01) == "*");
  CHECK(significance_stars(0.004) == "**");
  CHECK(significance_stars(0.001) == "**");
  CHECK(significance_stars(0.0005) == "***");
}

TEST_CASE("select_and_test picks tests per the decision procedure") {
  std::mt19937 rng(42);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> a(60);
  std::vector<double> b(60);
  for (auto& v : a) v = normal(rng);
  for (auto& v : b) v = normal(rng);

  SUBCASE("two large normal equal-variance groups with equal means") {
    const auto trace = select_and_test({make("a", a), make("b", b)});
    REQUIRE(trace.testable);
    CHECK(trace.chosen_test == TestName::kStudentT);
    CHECK(trace.stars == "");
    CHECK(trace.normality.size() == 2);
    CHECK(trace.variance.has_value());
  }

  SUBCASE("heteroscedastic normal groups choose welch") {
    std::vector<double> wide(60);
    for (auto& v : wide) v = normal(rng) * 6.0;
    const auto trace = select_and_test({make("a", a), make("b", wide)});
    REQUIRE(trace.testable);
    CHECK(trace.chosen_test == TestName::kWelchT);
  }

  SUBCASE("a heavily skewed group routes to mann-whitney") {
    std::vector<double> skew(60);
    std::lognormal_distribution<double> ln(0.0, 1.5);
    for (auto& v : skew) v = ln(rng);
    const auto trace = select_and_test({make("a", a), make("b", skew)});
    REQUIRE(trace.testable);
    CHECK(trace.chosen_test == TestName::kMannWhitneyU);
  }

  SUBCASE("three normal groups use anova, skewed use kruskal-wallis") {
    std::vector<double> c(60);
    for (auto& v : c) v = normal(rng);
    const auto tr3 = select_and_test({make("a", a), make("b", b), make("c", c)});
    REQUIRE(tr3.testable);
    CHECK((tr3.chosen_test == TestName::kAnova || tr3.chosen_test == TestName::kWelchAnova));

    std::vector<double> skew(60);
    std::lognormal_distribution<double> ln(0.0, 1.5);
    for (auto& v : skew) v = ln(rng);
    const auto trk = select_and_test({make("a", a), make("b", b), make("c", skew)});
    REQUIRE(trk.testable);
    CHECK(trk.chosen_test == TestName::kKruskalWallis);
  }

  SUBCASE("undersized group yields an untestable trace, not an exception") {
    const auto trace = select_and_test({make("a", a), make("b", {1.0, 2.0})});
    CHECK(!trace.testable);
    CHECK(trace.note.find("b") != std::string::npos);
    CHECK(!trace.final.has_value());
  }

  SUBCASE("p = 0.004 earns two stars") {
    DecisionTrace trace;
    trace.stars = significance_stars(0.004);
    CHECK(trace.stars == "**");
  }
}

TEST_CASE("all reported p-values stay in [0,1] on random inputs") {
  std::mt19937 rng(77);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<std::size_t> size(3, 12);
    std::vector<Sample> samples;
    const std::size_t k = 2 + iter % 3;
    for (std::size_t g = 0; g < k; ++g) {
      std::vector<double> v(size(rng));
      for (auto& x : v) x = normal(rng);
      samples.push_back({"g" + std::to_string(g), std::move(v)});
    }
    const auto trace = select_and_test(samples);
    REQUIRE(trace.testable);
    for (const auto& [group, r] : trace.normality) {
      CHECK(r.p_value >= 0.0);
      CHECK(r.p_value <= 1.0);
    }
    CHECK(trace.variance->p_value >= 0.0);
    CHECK(trace.variance->p_value <= 1.0);
    CHECK(trace.final->p_value >= 0.0);
    CHECK(trace.final->p_value <= 1.0);
    CHECK(std::isfinite(trace.final->statistic));
  }
}
