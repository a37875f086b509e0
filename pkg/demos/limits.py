"""
Normal limits
=============

Kolmogorov distance, local limit residuals and characteristic-function decay
for the exact inversion law. Everything here is computed from exact
coefficients; no sampling.
"""

from qgalois.analysis import cf_probe, clt_curve, llt_curve

ns = (16, 32, 64)
for m in (2, 3, 10):
    d = clt_curve(m, ns).statistics()
    print(f"m={m:2d} Kolmogorov:", " ".join(f"{x:.5f}" for x in d))

curve = llt_curve([2, 10], ns)
print()
print(curve.to_csv())

for n in (8, 16, 32):
    small, large = cf_probe(n, 2)
    print(f"n={n:2d}  c_small={small:.4f}  c_large={large:.4f}")
