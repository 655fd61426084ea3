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

#include "fairlens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "fairlens/distributions.hpp"
#include "fairlens/error.hpp"

namespace fairlens {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(const std::vector<double>& x, double m) {
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double median_of(std::vector<double> x) {
  const std::size_t n = x.size();
  std::nth_element(x.begin(), x.begin() + n / 2, x.end());
  double hi = x[n / 2];
  if (n % 2 == 1) return hi;
  std::nth_element(x.begin(), x.begin() + n / 2 - 1, x.end());
  return 0.5 * (x[n / 2 - 1] + hi);
}

void require_samples(const std::vector<Sample>& samples, std::size_t min_count,
                     std::size_t min_size, const char* what) {
  if (samples.size() < min_count) {
    throw ValidationError(std::string(what) + ": needs at least " +
                          std::to_string(min_count) + " samples");
  }
  for (const auto& s : samples) {
    if (s.values.size() < min_size) {
      throw ValidationError(std::string(what) + ": sample '" + s.group +
                            "' has fewer than " + std::to_string(min_size) + " values");
    }
  }
}

// Midranks of the pooled values plus the tie term sum(t^3 - t).
std::pair<std::vector<double>, double> midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(n);
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  return {std::move(ranks), tie_term};
}

// Counts of rank arrangements by U value for tie-free samples, u in
// [0, n_a*n_b]. Recurrence over the largest pooled observation: it belongs
// to sample a (beats all b elements, u drops by n_b') or to sample b.
//   cnt(m, n, u) = cnt(m-1, n, u-n) + cnt(m, n-1, u)
std::vector<std::uint64_t> exact_u_distribution(std::size_t n_a, std::size_t n_b) {
  const std::size_t umax = n_a * n_b;
  // cnt[m][u] for the current n layer; n = 0: U must be 0.
  std::vector<std::vector<std::uint64_t>> cnt(n_a + 1,
                                              std::vector<std::uint64_t>(umax + 1, 0));
  for (std::size_t m = 0; m <= n_a; ++m) cnt[m][0] = 1;
  for (std::size_t n = 1; n <= n_b; ++n) {
    for (std::size_t m = 1; m <= n_a; ++m) {
      for (std::size_t u = umax; u > 0; --u) {
        cnt[m][u] = (u >= n ? cnt[m - 1][u - n] : 0) + cnt[m][u];
      }
      // u == 0 row: cnt(m, n, 0) = cnt(m, n-1, 0) = 1, already in place
    }
  }
  return cnt[n_a];
}

double u_statistic(const Sample& a, const Sample& b, bool* has_ties, double* tie_term_out) {
  std::vector<double> pooled;
  pooled.reserve(a.values.size() + b.values.size());
  pooled.insert(pooled.end(), a.values.begin(), a.values.end());
  pooled.insert(pooled.end(), b.values.begin(), b.values.end());
  auto [ranks, tie_term] = midranks(pooled);
  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) rank_sum_a += ranks[i];
  const double n_a = static_cast<double>(a.values.size());
  if (has_ties) *has_ties = tie_term > 0.0;
  if (tie_term_out) *tie_term_out = tie_term;
  return rank_sum_a - n_a * (n_a + 1.0) / 2.0;
}

}  // namespace

std::string_view to_string(TestName name) {
  switch (name) {
    case TestName::kShapiroWilk: return "shapiro_wilk";
    case TestName::kLevene: return "levene";
    case TestName::kStudentT: return "student_t";
    case TestName::kWelchT: return "welch_t";
    case TestName::kMannWhitneyU: return "mann_whitney_u";
    case TestName::kAnova: return "anova";
    case TestName::kWelchAnova: return "welch_anova";
    case TestName::kKruskalWallis: return "kruskal_wallis";
  }
  return "unknown";
}

std::optional<TestName> test_name_from_string(std::string_view s) {
  for (TestName t : {TestName::kShapiroWilk, TestName::kLevene, TestName::kStudentT,
                     TestName::kWelchT, TestName::kMannWhitneyU, TestName::kAnova,
                     TestName::kWelchAnova, TestName::kKruskalWallis}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

// Royston (1995), AS R94. W is the squared correlation between the sorted
// sample and the approximate normal-scores weights; the p-value comes from a
// normal transform of ln(1 - W) with n-dependent moments.
TestResult shapiro_wilk(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 3 || n > 5000) {
    throw ValidationError("shapiro_wilk: sample size must be in [3, 5000], got " +
                          std::to_string(n));
  }
  std::vector<double> x(values);
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0.0)) throw ValidationError("shapiro_wilk: zero variance sample");

  const std::size_t n2 = n / 2;
  std::vector<double> a(n2);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    const double an25 = static_cast<double>(n) + 0.25;
    double summ2 = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
      a[i] = dist::normal_quantile((static_cast<double>(i + 1) - 0.375) / an25);
      summ2 += a[i] * a[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
    auto poly5 = [rsn](double c1, double c2, double c3, double c4, double c5) {
      return rsn * (c1 + rsn * (c2 + rsn * (c3 + rsn * (c4 + rsn * c5))));
    };
    const double a1 = poly5(0.221157, -0.147981, -2.071190, 4.434685, -2.706056) -
                      a[0] / ssumm2;
    std::size_t i1;
    double fac;
    if (n > 5) {
      i1 = 2;
      const double a2 = -a[1] / ssumm2 +
                        poly5(0.042981, -0.293762, -1.752461, 5.682633, -3.582633);
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
    } else {
      i1 = 1;
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = i1; i < n2; ++i) a[i] = -a[i] / fac;
  }

  // Full antisymmetric weight vector: -a[i] on the low tail, +a[i] mirrored.
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n2; ++i) {
    c[i] = -a[i];
    c[n - 1 - i] = a[i];
  }

  double sa = 0.0;
  double sx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += c[i];
    sx += x[i] / range;
  }
  sa /= static_cast<double>(n);
  sx /= static_cast<double>(n);
  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = c[i] - sa;
    const double dx = x[i] / range - sx;
    ssa += da * da;
    ssx += dx * dx;
    sax += da * dx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  if (w1 < 0.0) w1 = 0.0;
  const double w = 1.0 - w1;

  double p;
  if (n == 3) {
    constexpr double kPi6 = 1.90985931710274;   // 6/pi
    constexpr double kStqr = 1.04719755119660;  // asin(sqrt(3/4))
    p = kPi6 * (std::asin(std::sqrt(w)) - kStqr);
    p = std::clamp(p, 0.0, 1.0);
  } else {
    const double y = std::log(w1);
    const double an = static_cast<double>(n);
    double m;
    double s;
    double z;
    if (n <= 11) {
      const double gamma = -2.273 + 0.459 * an;
      if (y >= gamma) {
        return {TestName::kShapiroWilk, w, 1e-99, std::nullopt, std::nullopt};
      }
      const double yy = -std::log(gamma - y);
      m = 0.5440 + an * (-0.39978 + an * (0.025054 + an * -6.714e-4));
      s = std::exp(1.3822 + an * (-0.77857 + an * (0.062767 + an * -0.0020322)));
      z = (yy - m) / s;
    } else {
      const double lnn = std::log(an);
      m = -1.5861 + lnn * (-0.31082 + lnn * (-0.083751 + lnn * 0.0038915));
      s = std::exp(-0.4803 + lnn * (-0.082676 + lnn * 0.0030302));
      z = (y - m) / s;
    }
    p = dist::normal_sf(z);
  }
  return {TestName::kShapiroWilk, w, p, std::nullopt, std::nullopt};
}

TestResult levene(const std::vector<Sample>& samples, LeveneCenter center) {
  require_samples(samples, 2, 2, "levene");
  const std::size_t k = samples.size();
  std::size_t total = 0;
  std::vector<std::vector<double>> z(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& v = samples[i].values;
    const double c = center == LeveneCenter::kMean ? mean(v) : median_of(v);
    z[i].reserve(v.size());
    for (double x : v) z[i].push_back(std::fabs(x - c));
    total += v.size();
  }
  double grand = 0.0;
  std::vector<double> zbar(k);
  for (std::size_t i = 0; i < k; ++i) {
    zbar[i] = mean(z[i]);
    grand += zbar[i] * static_cast<double>(z[i].size());
  }
  grand /= static_cast<double>(total);
  double between = 0.0;
  double within = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    between += static_cast<double>(z[i].size()) * (zbar[i] - grand) * (zbar[i] - grand);
    for (double v : z[i]) within += (v - zbar[i]) * (v - zbar[i]);
  }
  const double df1 = static_cast<double>(k - 1);
  const double df2 = static_cast<double>(total - k);
  if (within == 0.0) {
    if (between == 0.0) return {TestName::kLevene, 0.0, 1.0, df1, df2};
    return {TestName::kLevene, kInf, 0.0, df1, df2};
  }
  const double w = (df2 / df1) * (between / within);
  return {TestName::kLevene, w, dist::f_sf(w, df1, df2), df1, df2};
}

TestResult student_t(const Sample& a, const Sample& b) {
  require_samples({a, b}, 2, 2, "student_t");
  const double na = static_cast<double>(a.values.size());
  const double nb = static_cast<double>(b.values.size());
  const double ma = mean(a.values);
  const double mb = mean(b.values);
  const double va = sample_variance(a.values, ma);
  const double vb = sample_variance(b.values, mb);
  const double df = na + nb - 2.0;
  const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / df;
  if (pooled == 0.0) {
    if (ma == mb) return {TestName::kStudentT, 0.0, 1.0, df, std::nullopt};
    return {TestName::kStudentT, ma > mb ? kInf : -kInf, 0.0, df, std::nullopt};
  }
  const double t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  return {TestName::kStudentT, t, dist::student_t_two_sided_p(t, df), df, std::nullopt};
}

TestResult welch_t(const Sample& a, const Sample& b) {
  require_samples({a, b}, 2, 2, "welch_t");
  const double na = static_cast<double>(a.values.size());
  const double nb = static_cast<double>(b.values.size());
  const double ma = mean(a.values);
  const double mb = mean(b.values);
  const double va = sample_variance(a.values, ma);
  const double vb = sample_variance(b.values, mb);
  const double sea = va / na;
  const double seb = vb / nb;
  if (sea + seb == 0.0) {
    const double df = na + nb - 2.0;
    if (ma == mb) return {TestName::kWelchT, 0.0, 1.0, df, std::nullopt};
    return {TestName::kWelchT, ma > mb ? kInf : -kInf, 0.0, df, std::nullopt};
  }
  const double df = (sea + seb) * (sea + seb) /
                    (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
  const double t = (ma - mb) / std::sqrt(sea + seb);
  return {TestName::kWelchT, t, dist::student_t_two_sided_p(t, df), df, std::nullopt};
}

TestResult mann_whitney_u(const Sample& a, const Sample& b, MannWhitneyMode mode) {
  if (a.values.empty() || b.values.empty()) {
    throw ValidationError("mann_whitney_u: both samples must be nonempty");
  }
  const std::size_t n_a = a.values.size();
  const std::size_t n_b = b.values.size();
  const std::size_t n = n_a + n_b;
  bool has_ties = false;
  double tie_term = 0.0;
  const double u = u_statistic(a, b, &has_ties, &tie_term);

  const bool exact_feasible = !has_ties && n <= 20;
  bool use_exact = false;
  switch (mode) {
    case MannWhitneyMode::kExact:
      if (!exact_feasible) {
        throw ValidationError(has_ties
                                  ? "mann_whitney_u: exact mode requires tie-free samples"
                                  : "mann_whitney_u: exact mode limited to n_a + n_b <= 20");
      }
      use_exact = true;
      break;
    case MannWhitneyMode::kNormalApprox:
      use_exact = false;
      break;
    case MannWhitneyMode::kAuto:
      use_exact = exact_feasible;
      break;
  }

  if (use_exact) {
    // Two-sided p: total probability of U values at least as far from the
    // null mean n_a*n_b/2 as the observed one. Integer arithmetic via 2U.
    const auto f = exact_u_distribution(n_a, n_b);
    const std::int64_t nm = static_cast<std::int64_t>(n_a) * static_cast<std::int64_t>(n_b);
    const std::int64_t obs2 = std::llabs(2 * static_cast<std::int64_t>(std::llround(u)) - nm);
    std::uint64_t extreme = 0;
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < f.size(); ++v) {
      total += f[v];
      const std::int64_t d2 = std::llabs(2 * static_cast<std::int64_t>(v) - nm);
      if (d2 >= obs2) extreme += f[v];
    }
    const double p = static_cast<double>(extreme) / static_cast<double>(total);
    return {TestName::kMannWhitneyU, u, p, std::nullopt, std::nullopt};
  }

  const double dn_a = static_cast<double>(n_a);
  const double dn_b = static_cast<double>(n_b);
  const double dn = static_cast<double>(n);
  const double mu = dn_a * dn_b / 2.0;
  const double var = dn_a * dn_b / 12.0 *
                     ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (!(var > 0.0)) {
    return {TestName::kMannWhitneyU, u, 1.0, std::nullopt, std::nullopt};
  }
  const double num = u - mu;
  const double cc = num > 0.0 ? 0.5 : (num < 0.0 ? -0.5 : 0.0);
  const double z = (num - cc) / std::sqrt(var);
  const double p = std::min(1.0, 2.0 * dist::normal_sf(std::fabs(z)));
  return {TestName::kMannWhitneyU, u, p, std::nullopt, std::nullopt};
}

TestResult one_way_anova(const std::vector<Sample>& samples) {
  require_samples(samples, 2, 2, "one_way_anova");
  const std::size_t k = samples.size();
  std::size_t total = 0;
  double grand = 0.0;
  std::vector<double> means(k);
  for (std::size_t i = 0; i < k; ++i) {
    means[i] = mean(samples[i].values);
    grand += means[i] * static_cast<double>(samples[i].values.size());
    total += samples[i].values.size();
  }
  grand /= static_cast<double>(total);
  double ssb = 0.0;
  double ssw = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double ni = static_cast<double>(samples[i].values.size());
    ssb += ni * (means[i] - grand) * (means[i] - grand);
    for (double v : samples[i].values) ssw += (v - means[i]) * (v - means[i]);
  }
  const double df1 = static_cast<double>(k - 1);
  const double df2 = static_cast<double>(total - k);
  if (ssw == 0.0) {
    if (ssb == 0.0) return {TestName::kAnova, 0.0, 1.0, df1, df2};
    return {TestName::kAnova, kInf, 0.0, df1, df2};
  }
  const double f = (ssb / df1) / (ssw / df2);
  return {TestName::kAnova, f, dist::f_sf(f, df1, df2), df1, df2};
}

TestResult welch_anova(const std::vector<Sample>& samples) {
  require_samples(samples, 2, 2, "welch_anova");
  const std::size_t k = samples.size();
  std::vector<double> ni(k);
  std::vector<double> mi(k);
  std::vector<double> vi(k);
  bool zero_var = false;
  for (std::size_t i = 0; i < k; ++i) {
    ni[i] = static_cast<double>(samples[i].values.size());
    mi[i] = mean(samples[i].values);
    vi[i] = sample_variance(samples[i].values, mi[i]);
    if (vi[i] == 0.0) zero_var = true;
  }
  const double df1 = static_cast<double>(k - 1);
  if (zero_var) {
    const bool all_equal = std::all_of(mi.begin(), mi.end(),
                                       [&](double m) { return m == mi[0]; });
    if (all_equal) return {TestName::kWelchAnova, 0.0, 1.0, df1, std::nullopt};
    return {TestName::kWelchAnova, kInf, 0.0, df1, std::nullopt};
  }
  double w_total = 0.0;
  for (std::size_t i = 0; i < k; ++i) w_total += ni[i] / vi[i];
  double mstar = 0.0;
  for (std::size_t i = 0; i < k; ++i) mstar += (ni[i] / vi[i]) * mi[i];
  mstar /= w_total;
  double a = 0.0;
  double tmp = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double wi = ni[i] / vi[i];
    a += wi * (mi[i] - mstar) * (mi[i] - mstar);
    const double frac = 1.0 - wi / w_total;
    tmp += frac * frac / (ni[i] - 1.0);
  }
  a /= df1;
  const double kk = static_cast<double>(k);
  const double b = 1.0 + 2.0 * (kk - 2.0) / (kk * kk - 1.0) * tmp;
  const double f = a / b;
  const double df2 = (kk * kk - 1.0) / (3.0 * tmp);
  return {TestName::kWelchAnova, f, dist::f_sf(f, df1, df2), df1, df2};
}

TestResult kruskal_wallis(const std::vector<Sample>& samples) {
  require_samples(samples, 2, 2, "kruskal_wallis");
  const std::size_t k = samples.size();
  std::vector<double> pooled;
  std::vector<std::size_t> sizes(k);
  for (std::size_t i = 0; i < k; ++i) {
    sizes[i] = samples[i].values.size();
    pooled.insert(pooled.end(), samples[i].values.begin(), samples[i].values.end());
  }
  const double dn = static_cast<double>(pooled.size());
  auto [ranks, tie_term] = midranks(pooled);
  const double correction = 1.0 - tie_term / (dn * dn * dn - dn);
  const double df = static_cast<double>(k - 1);
  if (!(correction > 0.0)) {
    // every pooled value identical
    return {TestName::kKruskalWallis, 0.0, 1.0, df, std::nullopt};
  }
  double h = 0.0;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double rank_sum = 0.0;
    for (std::size_t j = 0; j < sizes[i]; ++j) rank_sum += ranks[offset + j];
    offset += sizes[i];
    h += rank_sum * rank_sum / static_cast<double>(sizes[i]);
  }
  h = 12.0 / (dn * (dn + 1.0)) * h - 3.0 * (dn + 1.0);
  h /= correction;
  return {TestName::kKruskalWallis, h, dist::chi_squared_sf(h, df), df, std::nullopt};
}

std::string significance_stars(double p_value) {
  if (p_value < 0.001) return "***";
  if (p_value < 0.01) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

DecisionTrace select_and_test(const std::vector<Sample>& samples, double alpha_assumption) {
  DecisionTrace trace;
  if (samples.size() < 2) {
    trace.note = "untestable: fewer than two groups";
    return trace;
  }
  for (const auto& s : samples) {
    if (s.values.size() < 3) {
      trace.note = "untestable: group '" + s.group + "' has fewer than 3 values";
      return trace;
    }
  }

  bool all_normal = true;
  for (const auto& s : samples) {
    TestResult r;
    try {
      r = shapiro_wilk(s.values);
    } catch (const ValidationError&) {
      // zero-variance group: cannot be normal, route to the rank test
      r = {TestName::kShapiroWilk, 0.0, 0.0, std::nullopt, std::nullopt};
      trace.note += (trace.note.empty() ? "" : "; ");
      trace.note += "group '" + s.group + "' has zero variance, treated as non-normal";
    }
    if (!(r.p_value > alpha_assumption)) all_normal = false;
    trace.normality.emplace_back(s.group, r);
  }
  trace.variance = levene(samples);
  const bool homoscedastic = trace.variance->p_value > alpha_assumption;

  const bool two = samples.size() == 2;
  TestName chosen;
  if (!all_normal) {
    chosen = two ? TestName::kMannWhitneyU : TestName::kKruskalWallis;
  } else if (homoscedastic) {
    chosen = two ? TestName::kStudentT : TestName::kAnova;
  } else {
    chosen = two ? TestName::kWelchT : TestName::kWelchAnova;
  }
  trace.chosen_test = chosen;
  switch (chosen) {
    case TestName::kStudentT: trace.final = student_t(samples[0], samples[1]); break;
    case TestName::kWelchT: trace.final = welch_t(samples[0], samples[1]); break;
    case TestName::kMannWhitneyU: trace.final = mann_whitney_u(samples[0], samples[1]); break;
    case TestName::kAnova: trace.final = one_way_anova(samples); break;
    case TestName::kWelchAnova: trace.final = welch_anova(samples); break;
    default: trace.final = kruskal_wallis(samples); break;
  }
  trace.stars = significance_stars(trace.final->p_value);
  trace.testable = true;
  return trace;
}

}  // namespace fairlens
