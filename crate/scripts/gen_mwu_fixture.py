"""Freeze Mann-Whitney U reference values from scipy.stats.mannwhitneyu.

Usage: python3 scripts/gen_mwu_fixture.py > crates/core/tests/fixtures/mwu_scipy.json

50 large-sample pairs (normal approximation with tie and continuity correction) plus
10 small tie-free pairs using scipy's exact distribution.
"""
import json

import numpy as np
from scipy.stats import mannwhitneyu

rng = np.random.default_rng(7)
cases = []
for i in range(50):
    n1, n2 = int(rng.integers(10, 150)), int(rng.integers(10, 150))
    shift = float(rng.normal(0, 0.4))
    x = rng.normal(0, 1, n1)
    y = rng.normal(shift, 1, n2)
    if i % 3 == 0:
        # coarse rounding introduces ties
        x, y = np.round(x, 1), np.round(y, 1)
    if i % 5 == 0:
        # zero-heavy rates, as with sparse lexical features
        x = np.where(rng.random(n1) < 0.6, 0.0, np.abs(x))
        y = np.where(rng.random(n2) < 0.5, 0.0, np.abs(y))
    res = mannwhitneyu(x, y, alternative="two-sided", method="asymptotic", use_continuity=True)
    cases.append({"method": "asymptotic", "x": x.tolist(), "y": y.tolist(), "u": float(res.statistic), "p": float(res.pvalue)})
for i in range(10):
    n1, n2 = int(rng.integers(1, 9)), int(rng.integers(1, 9))
    while n1 + n2 > 16:
        n2 -= 1
    vals = rng.permutation(np.arange(n1 + n2) * 1.5 + 0.25)
    x, y = vals[:n1], vals[n1:]
    res = mannwhitneyu(x, y, alternative="two-sided", method="exact")
    cases.append({"method": "exact", "x": x.tolist(), "y": y.tolist(), "u": float(res.statistic), "p": float(res.pvalue)})
print(json.dumps({"source": "scipy.stats.mannwhitneyu", "cases": cases}))
