"""Generalized Galois polynomials and the inversion statistic of random words.

Submodules: ``qpoly`` (exact q-polynomials), ``dist`` (exact laws and
distances), ``combinat`` (words, paths, Ferrers diagrams), ``sampler``
(seeded Monte Carlo), ``analysis`` (limit-theorem curves) and ``cli``.
"""

from .dist import ExactPMF, closed_form_moments, exact_pmf
from .qpoly import CoeffPoly, galois_poly, q_binomial, q_multinomial

__version__ = "0.1.0"

__all__ = [
    "CoeffPoly",
    "ExactPMF",
    "closed_form_moments",
    "exact_pmf",
    "galois_poly",
    "q_binomial",
    "q_multinomial",
]
