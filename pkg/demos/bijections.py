"""
Words, lattice paths and Ferrers diagrams
=========================================

Binary words map to lattice paths (1 -> E, 2 -> N) and paths map to Ferrers
diagrams. Inversions become the area under the path, and the diagram's area
is the area left of the path shifted by n + 1.
"""

from collections import Counter

from qgalois.combinat import (
    Word,
    area_left,
    area_under,
    enumerate_paths,
    ferrers_to_path,
    inversions,
    path_to_ferrers,
    word_to_path,
)
from qgalois.qpoly import galois_poly

w = Word((2, 1, 2, 1, 1), 2)
p = word_to_path(w)
f = path_to_ferrers(p)
print("word", w, "-> path", p, "-> diagram", f)
print("inversions", inversions(w), "area under", area_under(p))
print("diagram area", f.area, "= area left", area_left(p), "+ n + 1")
assert ferrers_to_path(f) == p

n = 10
hist = Counter(path_to_ferrers(q).area - (n + 1) for q in enumerate_paths(n))
law = tuple(hist[k] for k in range(max(hist) + 1))
print(f"\nshifted area histogram over all {2**n} paths:")
print(law)
assert law == galois_poly(n, 2).coeffs
