"""Exact distributions of the inversion statistic and distances between them."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.special import ndtr

from .errors import DegenerateInputError, DomainError
from .qpoly import galois_poly, q_factorial

__all__ = [
    "ExactPMF",
    "MomentSummary",
    "exact_pmf",
    "closed_form_moments",
    "approx_moments",
    "moments_from_pmf",
    "permutation_inversion_pmf",
    "tv_distance",
    "tv_bound",
    "llt_residual",
    "kolmogorov_distance_to_normal",
    "fraction_to_json",
]


@dataclass(frozen=True)
class ExactPMF:
    """Finite distribution on ``{0, ..., len(numerators) - 1}`` with exact probabilities.

    ``P(k) = numerators[k] / denominator``.  Numerators are kept unreduced so
    that, e.g., the inversion PMF keeps ``m**n`` as its denominator.
    """

    numerators: tuple[int, ...]
    denominator: int
    n: int | None = None
    m: int | None = None

    def __post_init__(self):
        nums = tuple(int(c) for c in self.numerators)
        if not nums:
            raise DomainError("a PMF needs a nonempty support")
        if self.denominator <= 0:
            raise DomainError("denominator must be positive")
        if any(c < 0 for c in nums):
            raise DomainError("numerators must be nonnegative")
        if sum(nums) != self.denominator:
            raise DomainError(
                f"numerators sum to {sum(nums)}, not the denominator {self.denominator}"
            )
        object.__setattr__(self, "numerators", nums)

    @classmethod
    def point_mass(cls, k: int = 0) -> ExactPMF:
        return cls((0,) * k + (1,), 1)

    @classmethod
    def from_counts(cls, counts: Sequence[int], **meta) -> ExactPMF:
        """Normalize a histogram of nonnegative integer counts."""
        return cls(tuple(counts), sum(counts), **meta)

    def __len__(self):
        return len(self.numerators)

    def prob(self, k: int) -> Fraction:
        if 0 <= k < len(self.numerators):
            return Fraction(self.numerators[k], self.denominator)
        return Fraction(0)

    def probabilities(self) -> np.ndarray:
        """Float probabilities, each correctly rounded from the exact ratio."""
        d = self.denominator
        return np.array([c / d for c in self.numerators])

    def cdf(self) -> np.ndarray:
        """Float CDF at ``k = 0, ..., len - 1``, from exact partial sums."""
        d = self.denominator
        out = []
        acc = 0
        for c in self.numerators:
            acc += c
            out.append(acc / d)
        return np.array(out)

    def shifted(self, k: int) -> ExactPMF:
        """Distribution of ``X + k`` for ``k >= 0``."""
        if k < 0:
            raise DomainError("only nonnegative shifts keep the support in N")
        return ExactPMF((0,) * k + self.numerators, self.denominator, self.n, self.m)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "denominator": str(self.denominator),
            "numerators": [str(c) for c in self.numerators],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> ExactPMF:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(
            tuple(int(c) for c in obj["numerators"]),
            int(obj["denominator"]),
            obj.get("n"),
            obj.get("m"),
        )


def fraction_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator), "float": float(x)}


@dataclass(frozen=True)
class MomentSummary:
    mean: Fraction
    variance: Fraction
    n: int | None = None
    m: int | None = None

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "mean": fraction_to_json(self.mean),
            "variance": fraction_to_json(self.variance),
        }


def _check_nm(n, m):
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")


def exact_pmf(n: int, m: int) -> ExactPMF:
    """Law of the inversion count of a uniform random word in ``{1..m}^n``.

    The probability generating function is ``m**-n * galois_poly(n, m)(q)``.
    """
    _check_nm(n, m)
    return ExactPMF(galois_poly(n, m).coeffs, m**n, n, m)


def closed_form_moments(n: int, m: int) -> MomentSummary:
    """Mean ``n(n-1)(m-1)/(4m)`` and variance ``n(n-1)(2n+5)(m^2-1)/(72 m^2)``."""
    _check_nm(n, m)
    mean = Fraction(n * (n - 1) * (m - 1), 4 * m)
    var = Fraction(n * (n - 1) * (2 * n + 5) * (m * m - 1), 72 * m * m)
    return MomentSummary(mean, var, n, m)


def approx_moments(n: int, m: int) -> MomentSummary:
    """Leading-order moments ``(m-1) n^2 / (4m)`` and ``(m^2-1) n^3 / (36 m^2)``."""
    _check_nm(n, m)
    return MomentSummary(
        Fraction((m - 1) * n * n, 4 * m),
        Fraction((m * m - 1) * n**3, 36 * m * m),
        n,
        m,
    )


def moments_from_pmf(p: ExactPMF) -> MomentSummary:
    s1 = sum(k * c for k, c in enumerate(p.numerators))
    s2 = sum(k * k * c for k, c in enumerate(p.numerators))
    mean = Fraction(s1, p.denominator)
    return MomentSummary(mean, Fraction(s2, p.denominator) - mean * mean, p.n, p.m)


def permutation_inversion_pmf(n: int) -> ExactPMF:
    """Inversions of a uniform random permutation of ``{1..n}``: ``[n]!_q / n!``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return ExactPMF(q_factorial(n).coeffs, math.factorial(n), n, None)


def tv_distance(p: ExactPMF, r: ExactPMF) -> Fraction:
    """Exact total variation distance ``(1/2) sum_k |p(k) - r(k)|``."""
    dp, dr = p.denominator, r.denominator
    size = max(len(p), len(r))
    total = 0
    for k in range(size):
        a = p.numerators[k] if k < len(p) else 0
        b = r.numerators[k] if k < len(r) else 0
        total += abs(a * dr - b * dp)
    return Fraction(total, 2 * dp * dr)


def tv_bound(n: int, m: int) -> Fraction:
    """``1 - (m)_n / m^n``: probability that a random word has a repeated letter."""
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    falling = 1
    for i in range(n):
        falling *= max(m - i, 0)
    return 1 - Fraction(falling, m**n)


def llt_residual(n: int, m: int, use_approx_moments: bool = False) -> float:
    """Sup-norm gap between ``sigma * P(G = k)`` and the standard normal density.

    The sup runs over ``k = -1, ..., deg + 1``; outside that range both terms
    are dominated by their values inside it.
    """
    if n <= 1 or m <= 1:
        raise DegenerateInputError(f"sigma = 0 for n={n}, m={m}")
    mom = approx_moments(n, m) if use_approx_moments else closed_form_moments(n, m)
    mu = float(mom.mean)
    sigma = mom.sd
    pmf = exact_pmf(n, m)
    k = np.arange(-1, len(pmf) + 1)
    probs = np.concatenate([[0.0], pmf.probabilities(), [0.0]])
    gauss = np.exp(-((k - mu) ** 2) / (2 * sigma * sigma)) / math.sqrt(2 * math.pi)
    return float(np.max(np.abs(sigma * probs - gauss)))


def kolmogorov_distance_to_normal(p: ExactPMF, mean: float, sd: float) -> float:
    """``sup_k |F_p(k) - Phi((k + 1/2 - mean) / sd)|`` over ``k = -1, ..., len - 1``.

    The half-integer continuity correction matches the lattice support.
    """
    if not sd > 0:
        raise DomainError(f"sd must be positive, got {sd}")
    k = np.arange(-1, len(p))
    cdf = np.concatenate([[0.0], p.cdf()])
    phi = ndtr((k + 0.5 - float(mean)) / float(sd))
    return float(np.max(np.abs(cdf - phi)))
