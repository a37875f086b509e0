"""Exact polynomial engine for q-analogs.

Polynomials in ``q`` are stored densely as tuples of Python integers, index
``i`` holding the coefficient of ``q**i``.  Everything here is exact: products
of large polynomials go through Kronecker substitution (pack the coefficient
vector into one big integer, multiply with GMP, unpack), which is exact as
long as the slot width exceeds the largest possible product coefficient.
"""

from __future__ import annotations

import cmath
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import gmpy2
import numpy as np

from .errors import DomainError

__all__ = [
    "CoeffPoly",
    "Composition",
    "compositions",
    "schoolbook_mul",
    "poly_mul",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "q_multinomial",
    "q_multinomial_product",
    "galois_poly",
    "galois_poly_direct",
    "galois_degree",
    "eval_unit_circle",
    "poly_to_json",
    "poly_from_json",
]

# Below this many coefficients in the shorter factor, plain convolution wins.
_KRONECKER_CUTOFF = 24


@dataclass(frozen=True)
class CoeffPoly:
    """Dense polynomial in ``q`` with nonnegative integer coefficients.

    Trailing zeros are stripped on construction, so the zero polynomial is
    ``CoeffPoly(())`` and ``degree`` is ``-1`` for it.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = [int(c) for c in self.coeffs]
        if any(c < 0 for c in cs):
            raise DomainError("coefficients must be nonnegative")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: CoeffPoly) -> CoeffPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return CoeffPoly(tuple(out))

    def __mul__(self, other: CoeffPoly) -> CoeffPoly:
        return CoeffPoly(tuple(poly_mul(self.coeffs, other.coeffs)))

    def shift(self, k: int) -> CoeffPoly:
        """Multiply by ``q**k``."""
        if self.is_zero():
            return self
        return CoeffPoly((0,) * k + self.coeffs)

    def __call__(self, q):
        """Exact evaluation by Horner's rule (ints, Fractions, floats...)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def value_at_one(self) -> int:
        return sum(self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __repr__(self):
        if len(self.coeffs) > 8:
            head = ", ".join(str(c) for c in self.coeffs[:4])
            return f"CoeffPoly(degree={self.degree}, coeffs=({head}, ...))"
        return f"CoeffPoly({self.coeffs!r})"


@dataclass(frozen=True)
class Composition:
    """A weak composition ``(k_1, ..., k_m)`` of ``n = sum(k_i)``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(k) for k in self.parts)
        if not parts:
            raise DomainError("a composition needs at least one part")
        if any(k < 0 for k in parts):
            raise DomainError(f"negative part in {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)


def compositions(n: int, m: int) -> Iterator[Composition]:
    """All weak compositions of ``n`` into ``m`` parts, lexicographically."""
    if m < 1:
        raise DomainError("m must be at least 1")
    # stars and bars: choose m-1 bar positions among n+m-1 slots
    for bars in itertools.combinations(range(n + m - 1), m - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + m - 1 - prev - 1)
        yield Composition(tuple(parts))


# -- raw coefficient-list arithmetic -------------------------------------


def schoolbook_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Plain O(len(a) * len(b)) convolution."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(coeffs: Sequence[int], width: int):
    return gmpy2.mpz(int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little"))


def _unpack(value, width: int, size: int) -> list[int]:
    buf = int(value).to_bytes(width * size, "little")
    return [int.from_bytes(buf[i * width:(i + 1) * width], "little") for i in range(size)]


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # slot width must hold min(len) * max(a) * max(b)
    bits = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length()
    width = bits // 8 + 1
    size = len(a) + len(b) - 1
    return _unpack(_pack(a, width) * _pack(b, width), width, size)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact product of two nonnegative coefficient lists."""
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_CUTOFF:
        return schoolbook_mul(a, b)
    return _kronecker_mul(a, b)


def _mul_q_integer(a: Sequence[int], ell: int) -> list[int]:
    """Multiply by ``1 + q + ... + q**(ell-1)`` using a sliding window sum."""
    if ell == 0 or not a:
        return []
    out = []
    window = 0
    for i in range(len(a) + ell - 1):
        if i < len(a):
            window += a[i]
        if i >= ell:
            window -= a[i - ell]
        out.append(window)
    return out


def _div_q_integer(a: Sequence[int], ell: int) -> list[int]:
    """Exact quotient by ``1 + q + ... + q**(ell-1)``; raises if inexact."""
    if ell < 1:
        raise DomainError("cannot divide by [0]_q")
    if ell == 1:
        return list(a)
    size = len(a) - ell + 1
    if size <= 0:
        raise ArithmeticError("division by q-integer is not exact")
    # a * (1 - q) = c * (1 - q**ell), solved left to right
    out = [0] * size
    for i in range(size):
        d = a[i] - (a[i - 1] if i else 0)
        out[i] = d + (out[i - ell] if i >= ell else 0)
    # the same recurrence must produce zeros past the quotient's end
    for i in range(size, len(a) + 1):
        d = (a[i] if i < len(a) else 0) - a[i - 1]
        if d + (out[i - ell] if 0 <= i - ell < size else 0) != 0:
            raise ArithmeticError("division by q-integer is not exact")
    return out


# -- q-analogs ------------------------------------------------------------


def q_integer(ell: int) -> CoeffPoly:
    """``[ell]_q = 1 + q + ... + q**(ell-1)``; the zero polynomial for ``ell = 0``."""
    if ell < 0:
        raise DomainError(f"q-integer needs ell >= 0, got {ell}")
    return CoeffPoly((1,) * ell)


@lru_cache(maxsize=None)
def q_factorial(k: int) -> CoeffPoly:
    """``[k]!_q = [1]_q [2]_q ... [k]_q``."""
    if k < 0:
        raise DomainError(f"q-factorial needs k >= 0, got {k}")
    coeffs = [1]
    for ell in range(2, k + 1):
        coeffs = _mul_q_integer(coeffs, ell)
    return CoeffPoly(tuple(coeffs))


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> CoeffPoly:
    """Gaussian binomial coefficient, via ``B(n, k) = B(n-1, k-1) [n]_q / [k]_q``."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    if 2 * k > n:
        return q_binomial(n, n - k)
    if k == 0:
        return CoeffPoly((1,))
    prev = q_binomial(n - 1, k - 1).coeffs
    return CoeffPoly(tuple(_div_q_integer(_mul_q_integer(prev, n), k)))


def _as_composition(c) -> Composition:
    return c if isinstance(c, Composition) else Composition(tuple(c))


def q_multinomial(c: Composition | Sequence[int]) -> CoeffPoly:
    """Gaussian multinomial ``[n]!_q / ([k_1]!_q ... [k_m]!_q)``.

    Computed straight from the definition by exact division of the q-factorial.
    """
    c = _as_composition(c)
    coeffs = list(q_factorial(c.n).coeffs)
    # dividing out the largest part first keeps intermediates short
    for k in sorted(c.parts, reverse=True):
        for ell in range(2, k + 1):
            coeffs = _div_q_integer(coeffs, ell)
    return CoeffPoly(tuple(coeffs))


def q_multinomial_product(c: Composition | Sequence[int]) -> CoeffPoly:
    """Gaussian multinomial as the product of ``q_binomial(k_1+...+k_i, k_i)``."""
    c = _as_composition(c)
    acc = CoeffPoly((1,))
    total = 0
    for k in c.parts:
        total += k
        acc = acc * q_binomial(total, k)
    return acc


@lru_cache(maxsize=None)
def galois_poly(n: int, m: int) -> CoeffPoly:
    """Generalized Galois polynomial: sum of q-multinomials over compositions of n into m parts.

    Uses the splitting recurrence ``G(n, m) = sum_j q_binomial(n, j) G(n - j, m - 1)``
    with ``G(n, 1) = 1``: choose which ``j`` positions carry the largest letter.
    Memoized; safe under concurrent calls because results are immutable.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if m == 1 or n == 0:
        return CoeffPoly((1,))
    # Build the lower column bottom-up to keep recursion depth at m, not n*m.
    for k in range(n):
        galois_poly(k, m - 1)
    # Every coefficient of every partial sum is at most m**n, so all terms can
    # share one Kronecker slot width and be summed while still packed.
    width = (m**n).bit_length() // 8 + 1
    total = gmpy2.mpz(0)
    for j in range(n + 1):
        total += _pack(q_binomial(n, j).coeffs, width) * _pack(galois_poly(n - j, m - 1).coeffs, width)
    return CoeffPoly(tuple(_unpack(total, width, galois_degree(n, m) + 1)))


def galois_poly_direct(n: int, m: int) -> CoeffPoly:
    """Same polynomial by direct summation over all compositions (test oracle)."""
    if n < 0 or m < 1:
        raise DomainError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    acc = CoeffPoly(())
    for c in compositions(n, m):
        acc = acc + q_multinomial(c)
    return acc


def galois_degree(n: int, m: int) -> int:
    """Degree of ``galois_poly(n, m)``: attained by the most balanced composition."""
    r = n % m
    lo = n // m
    hi = lo + (1 if r else 0)
    return (n * n - r * hi * hi - (m - r) * lo * lo) // 2


def eval_unit_circle(p: CoeffPoly, theta, scale: int = 1):
    """Evaluate ``p(e^{i theta}) / scale`` in complex floating point.

    Coefficients are rounded individually from the exact rationals
    ``c / scale`` before the Horner pass, so passing ``scale = p(1)`` gives a
    characteristic function with O(degree * eps) absolute error.  ``theta``
    may be a scalar or a numpy array.
    """
    coeffs = [c / scale for c in p.coeffs] if scale != 1 else [float(c) for c in p.coeffs]
    if np.ndim(theta) == 0:
        z = cmath.exp(1j * float(theta))
        acc = 0j
    else:
        z = np.exp(1j * np.asarray(theta, dtype=float))
        acc = np.zeros_like(z)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


# -- serialization ----------------------------------------------------------


def poly_to_json(p: CoeffPoly, n: int | None = None, m: int | None = None) -> dict:
    """JSON-ready dict; coefficients as decimal strings."""
    return {"n": n, "m": m, "coeffs": [str(c) for c in p.coeffs]}


def poly_from_json(obj: dict | str) -> CoeffPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return CoeffPoly(tuple(int(c) for c in obj["coeffs"]))

