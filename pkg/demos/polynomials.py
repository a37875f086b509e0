"""
q-analogs and generalized Galois polynomials
============================================

Builds q-integers, q-binomials and the Galois polynomials G_n^(m)(q), and
checks them against brute-force inversion counts.
"""

import itertools
from collections import Counter

from qgalois.qpoly import (
    galois_degree,
    galois_poly,
    galois_poly_direct,
    q_binomial,
    q_factorial,
    q_multinomial,
    q_multinomial_product,
)

print("[4]_q!       ", q_factorial(4).coeffs)
print("[6 choose 3] ", q_binomial(6, 3).coeffs)

# two routes to the same q-multinomial
parts = (2, 1, 3)
print("q-multinomial", q_multinomial(parts).coeffs)
assert q_multinomial(parts) == q_multinomial_product(parts)

# G_n^(m)(q) counts words by inversions
n, m = 5, 3
counts = Counter(
    sum(w[i] > w[j] for i in range(n) for j in range(i + 1, n))
    for w in itertools.product(range(m), repeat=n)
)
brute = tuple(counts[k] for k in range(max(counts) + 1))
g = galois_poly(n, m)
print(f"G_{n}^({m})      ", g.coeffs)
assert g.coeffs == brute
assert g == galois_poly_direct(n, m)
assert g(1) == m**n and g.degree == galois_degree(n, m)

# large cases stay exact
big = galois_poly(60, 6)
print("G_60^(6): degree", big.degree, "largest coefficient has", len(str(max(big.coeffs))), "digits")
