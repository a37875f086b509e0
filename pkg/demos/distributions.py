"""
Exact laws of the inversion count
=================================

Exact PMFs as fractions, closed-form moments, and the total variation
distance to the inversion law of a uniform permutation.
"""

from qgalois.dist import (
    closed_form_moments,
    exact_pmf,
    moments_from_pmf,
    permutation_inversion_pmf,
    tv_bound,
    tv_distance,
)

p = exact_pmf(4, 3)
print("P(I = k), n=4, m=3:", [str(p.prob(k)) for k in range(len(p))])

for n, m in [(3, 2), (10, 4), (30, 7)]:
    closed = closed_form_moments(n, m)
    assert moments_from_pmf(exact_pmf(n, m)) == closed
    print(f"n={n:2d} m={m}: mean {closed.mean}, variance {closed.variance}")

# as the alphabet grows, repeated letters vanish and words behave like permutations
n = 5
perm = permutation_inversion_pmf(n)
print("\n  m   TV            bound")
for m in (5, 10, 20, 50, 200):
    tv = tv_distance(exact_pmf(n, m), perm)
    print(f"{m:3d}   {float(tv):.6f}      {float(tv_bound(n, m)):.6f}")
    assert tv <= tv_bound(n, m)
