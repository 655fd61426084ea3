#!/usr/bin/env python3
"""Regenerates tests/support/stat_fixtures.hpp.

Draws small fixed datasets and records the test statistics and p-values
computed by scipy/statsmodels. The emitted header freezes both the inputs
and the expected outputs, so the C++ tests have no runtime dependency on
Python. Rerun only when adding fixtures; commit the regenerated header.
"""

import io
import numpy as np
from scipy import stats, special
from statsmodels.stats.oneway import anova_oneway

out = io.StringIO()


def emit(line=""):
    out.write(line + "\n")


def fmt(x):
    return repr(float(x))


def vec(name, values):
    body = ", ".join(fmt(v) for v in values)
    emit(f"inline const std::vector<double> {name} = {{{body}}};")


emit("// Frozen reference values for the statistical tests.")
emit("// Generated by scripts/gen_stat_fixtures.py (scipy %s, statsmodels)." % "1.15")
emit("// Do not edit by hand.")
emit("#pragma once")
emit()
emit("#include <vector>")
emit()
emit("namespace fairlens::fixtures {")
emit()

# ---- Shapiro-Wilk ----------------------------------------------------------
sw_cases = {
    "sw_normal20": np.random.RandomState(42).standard_normal(20),
    "sw_heavy20": np.random.RandomState(7).standard_t(1, 20),
    "sw_3pt": np.array([-1.0, 0.0, 1.0]),
    "sw_n4": np.random.RandomState(3).standard_normal(4),
    "sw_n11": np.random.RandomState(11).standard_normal(11),
    "sw_n12": np.random.RandomState(12).standard_normal(12),
    "sw_uniform50": np.random.RandomState(5).uniform(size=50),
    "sw_n300": np.random.RandomState(13).standard_normal(300),
}
for name, x in sw_cases.items():
    w, p = stats.shapiro(x)
    vec(name, x)
    emit(f"inline constexpr double {name}_w = {fmt(w)};")
    emit(f"inline constexpr double {name}_p = {fmt(p)};")
    emit()

# ---- Levene ----------------------------------------------------------------
lev_a = np.random.RandomState(1).standard_normal(30)
lev_b = np.random.RandomState(2).standard_normal(30) * 5.0
w, p = stats.levene(lev_a, lev_b, center="mean")
vec("levene_a", lev_a)
vec("levene_b", lev_b)
emit(f"inline constexpr double levene_ab_w = {fmt(w)};")
emit(f"inline constexpr double levene_ab_p = {fmt(p)};")
emit()

lev3 = [np.random.RandomState(s).standard_normal(25) for s in (3, 4, 5)]
w, p = stats.levene(*lev3, center="mean")
for i, g in enumerate(lev3):
    vec(f"levene_eq3_{i}", g)
emit(f"inline constexpr double levene_eq3_w = {fmt(w)};")
emit(f"inline constexpr double levene_eq3_p = {fmt(p)};")
emit()

med_w, med_p = stats.levene(lev_a, lev_b, center="median")
emit(f"inline constexpr double levene_ab_median_w = {fmt(med_w)};")
emit(f"inline constexpr double levene_ab_median_p = {fmt(med_p)};")
emit()

# ---- t-tests ----------------------------------------------------------------
t, p = stats.ttest_ind([1.0, 2.0, 3.0], [2.0, 3.0, 4.0])
emit(f"inline constexpr double t_123_234_t = {fmt(t)};")
emit(f"inline constexpr double t_123_234_p = {fmt(p)};")
emit()

welch_a = np.random.RandomState(8).standard_normal(12)
welch_b = np.random.RandomState(9).standard_normal(18) * 3.0 + 0.8
res = stats.ttest_ind(welch_a, welch_b, equal_var=False)
va, vb = welch_a.var(ddof=1), welch_b.var(ddof=1)
na, nb = len(welch_a), len(welch_b)
df = (va / na + vb / nb) ** 2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
vec("welch_a", welch_a)
vec("welch_b", welch_b)
emit(f"inline constexpr double welch_ab_t = {fmt(res.statistic)};")
emit(f"inline constexpr double welch_ab_p = {fmt(res.pvalue)};")
emit(f"inline constexpr double welch_ab_df = {fmt(df)};")
emit()

student = stats.ttest_ind(welch_a, welch_b, equal_var=True)
emit(f"inline constexpr double student_ab_t = {fmt(student.statistic)};")
emit(f"inline constexpr double student_ab_p = {fmt(student.pvalue)};")
emit()

# ---- three-group fixtures: ANOVA, Welch ANOVA, Kruskal-Wallis ---------------
g1 = np.random.RandomState(10).standard_normal(20)
g2 = np.random.RandomState(11).standard_normal(25) * 2.0 + 0.5
g3 = np.random.RandomState(12).standard_normal(30) * 0.5 + 1.0
vec("grp3_a", g1)
vec("grp3_b", g2)
vec("grp3_c", g3)
f, p = stats.f_oneway(g1, g2, g3)
emit(f"inline constexpr double grp3_anova_f = {fmt(f)};")
emit(f"inline constexpr double grp3_anova_p = {fmt(p)};")
wa = anova_oneway([g1, g2, g3], use_var="unequal", welch_correction=True)
emit(f"inline constexpr double grp3_welch_f = {fmt(wa.statistic)};")
emit(f"inline constexpr double grp3_welch_p = {fmt(wa.pvalue)};")
emit(f"inline constexpr double grp3_welch_df2 = {fmt(wa.df_denom)};")
h, p = stats.kruskal(g1, g2, g3)
emit(f"inline constexpr double grp3_kruskal_h = {fmt(h)};")
emit(f"inline constexpr double grp3_kruskal_p = {fmt(p)};")
emit()

# ---- Mann-Whitney -----------------------------------------------------------
perm = np.random.RandomState(20).permutation(12) + 1.0
mwu_a, mwu_b = perm[:6], perm[6:]
res = stats.mannwhitneyu(mwu_a, mwu_b, alternative="two-sided", method="exact")
vec("mwu_exact6_a", mwu_a)
vec("mwu_exact6_b", mwu_b)
emit(f"inline constexpr double mwu_exact6_u = {fmt(res.statistic)};")
emit(f"inline constexpr double mwu_exact6_p = {fmt(res.pvalue)};")
emit()

ties_a = [1.0, 2.0, 2.0, 3.0, 5.0]
ties_b = [2.0, 3.0, 3.0, 4.0, 6.0, 6.0]
res = stats.mannwhitneyu(ties_a, ties_b, alternative="two-sided", method="asymptotic")
emit(f"inline constexpr double mwu_ties_u = {fmt(res.statistic)};")
emit(f"inline constexpr double mwu_ties_p = {fmt(res.pvalue)};")
emit()

# ---- special functions -------------------------------------------------------
emit("// (x, a, b, betainc), (a, x, gammainc_upper), (p, norm_ppf)")
bi = [(0.3, 2.0, 3.0), (0.7, 0.5, 0.5), (0.01, 5.0, 2.0), (0.999, 4.5, 1.5),
      (0.5, 30.0, 0.5), (0.2, 0.5, 12.0)]
rows = ", ".join("{%s, %s, %s, %s}" % (fmt(x), fmt(a), fmt(b), fmt(special.betainc(a, b, x)))
                 for x, a, b in bi)
emit(f"inline const std::vector<std::vector<double>> betainc_pins = {{{rows}}};")
gi = [(0.5, 0.1), (1.5, 2.0), (10.0, 12.5), (3.0, 0.2), (25.0, 20.0)]
rows = ", ".join("{%s, %s, %s}" % (fmt(a), fmt(x), fmt(special.gammaincc(a, x)))
                 for a, x in gi)
emit(f"inline const std::vector<std::vector<double>> gammaq_pins = {{{rows}}};")
pp = [1e-9, 1e-4, 0.025, 0.3, 0.5, 0.75, 0.975, 1 - 1e-4, 1 - 1e-9]
rows = ", ".join("{%s, %s}" % (fmt(q), fmt(stats.norm.ppf(q))) for q in pp)
emit(f"inline const std::vector<std::vector<double>> norm_ppf_pins = {{{rows}}};")
emit()
emit("}  // namespace fairlens::fixtures")

with open("tests/support/stat_fixtures.hpp", "w") as f:
    f.write(out.getvalue())
print("wrote tests/support/stat_fixtures.hpp")
