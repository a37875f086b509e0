"""
Seeded Monte Carlo and the Hoeffding decomposition
==================================================

Three ways to realise the same law (inversions of a random word, a
U-statistic over marked uniforms, and Ferrers areas), compared with the exact
PMF, plus the variance split into linear and degenerate parts.
"""

import numpy as np

from qgalois.analysis import chi_square_gof, variance_standard_error
from qgalois.dist import closed_form_moments, exact_pmf
from qgalois.sampler import (
    SampleStream,
    batch_joint,
    inversions_batch,
    sample_ferrers_batch,
    sample_hoeffding,
    sample_u_batch,
    sample_words,
    v_decomposition_variance,
)

seed, n, m, reps = 2024, 6, 2, 100_000
pmf = exact_pmf(n, m)
draws = {
    "word": inversions_batch(sample_words(n, m, reps, SampleStream(seed, 0)), m),
    "u": sample_u_batch(n, m, reps, SampleStream(seed, 1)),
    "ferrers": sample_ferrers_batch(n, reps, SampleStream(seed, 2))[0] - (n + 1),
}
for name, x in draws.items():
    r = chi_square_gof(x, pmf)
    print(f"{name:8s} chi2 = {r.statistic:6.2f} on {r.dof} dof, p = {r.pvalue:.3f}")

# the batch is the same whatever the worker count
a = batch_joint(40, 3, 50_000, SampleStream(seed, 5), workers=1)
b = batch_joint(40, 3, 50_000, SampleStream(seed, 5), workers=4)
assert np.array_equal(a, b)
mom = closed_form_moments(40, 3)
print(f"\nmean V at n=40, m=3: {a[:, 0].mean():.2f} (exact {float(mom.mean):.2f})")

m = 4
h = sample_hoeffding(m, 1_000_000, SampleStream(seed, 3))
print(f"Var xi  = {h['xi1'].var():.5f} +- {variance_standard_error(h['xi1']):.5f}"
      f"  target {(m * m - 1) / (36 * m * m):.5f}")
print(f"Var eta = {h['eta'].var():.5f} +- {variance_standard_error(h['eta']):.5f}"
      f"  target {7 / 36 * (1 - 1 / m**2):.5f}")

lin, res = v_decomposition_variance(50, 4)
print("\nVar V at n=50, m=4:", lin, "+", res, "=", lin + res)
assert lin + res == closed_form_moments(50, 4).variance
