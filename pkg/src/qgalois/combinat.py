"""Words, inversion counting, and the word / lattice path / Ferrers diagram bijections.

Letters map to steps as ``1 -> E`` and ``2 -> N``.  With the order E < N an
inversion is an N-step before an E-step, which is one unit square under the
path, so ``area_under(word_to_path(w)) == inversions(w)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceededError, DomainError

__all__ = [
    "Word",
    "LatticePath",
    "FerrersDiagram",
    "DEFAULT_ENUMERATION_BUDGET",
    "inversions",
    "inversions_naive",
    "word_to_path",
    "path_to_word",
    "reflect",
    "area_under",
    "area_left",
    "path_to_ferrers",
    "ferrers_to_path",
    "enumerate_words",
    "enumerate_paths",
    "enumerate_ferrers",
    "parse_word",
    "parse_path",
    "parse_ferrers",
]

DEFAULT_ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    m: int

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        if self.m < 1:
            raise DomainError(f"alphabet size must be >= 1, got {self.m}")
        bad = [x for x in letters if not 1 <= x <= self.m]
        if bad:
            raise DomainError(f"letters {bad} outside 1..{self.m}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return ",".join(str(x) for x in self.letters)

    def letter_counts(self) -> tuple[int, ...]:
        counts = [0] * self.m
        for x in self.letters:
            counts[x - 1] += 1
        return tuple(counts)


@dataclass(frozen=True)
class LatticePath:
    """North-east path from the origin, stored as a string over ``{'E', 'N'}``."""

    steps: str

    def __post_init__(self):
        bad = set(self.steps) - {"E", "N"}
        if bad:
            raise DomainError(f"invalid steps {sorted(bad)}; use E and N")

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return self.steps

    @property
    def end(self) -> tuple[int, int]:
        e = self.steps.count("E")
        return e, len(self.steps) - e


@dataclass(frozen=True)
class FerrersDiagram:
    """Row lengths, top row (the longest) first."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 1 for r in rows):
            raise DomainError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise DomainError(f"row lengths must be weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return self.rows[0] if self.rows else 0

    @property
    def area(self) -> int:
        return sum(self.rows)

    @property
    def semiperimeter(self) -> int:
        return self.height + self.width

    def __str__(self):
        return ",".join(str(r) for r in self.rows)


# -- inversions ---------------------------------------------------------------


def _letters(w) -> tuple[Sequence[int], int]:
    if isinstance(w, Word):
        return w.letters, w.m
    letters = tuple(w)
    return letters, max(letters, default=1)


def inversions_naive(w: Word | Sequence[int]) -> int:
    """Pairwise count of ``i < j`` with ``w_i > w_j``."""
    letters, _ = _letters(w)
    n = len(letters)
    return sum(
        1 for i in range(n) for j in range(i + 1, n) if letters[i] > letters[j]
    )


def inversions(w: Word | Sequence[int]) -> int:
    """Inversion count in O(n log m) with a Fenwick tree over the alphabet.

    Scanning left to right, each letter ``x`` contributes the number of earlier
    letters strictly greater than ``x``.
    """
    letters, m = _letters(w)
    tree = [0] * (m + 1)
    total = 0
    for seen, x in enumerate(letters):
        # prefix count of earlier letters <= x
        i, le = x, 0
        while i > 0:
            le += tree[i]
            i -= i & -i
        total += seen - le
        i = x
        while i <= m:
            tree[i] += 1
            i += i & -i
    return total


# -- paths ----------------------------------------------------------------------


def word_to_path(w: Word) -> LatticePath:
    if w.m != 2:
        raise DomainError(f"the path picture needs m = 2, got m = {w.m}")
    return LatticePath("".join("E" if x == 1 else "N" for x in w.letters))


def path_to_word(p: LatticePath) -> Word:
    return Word(tuple(1 if s == "E" else 2 for s in p.steps), 2)


def reflect(p: LatticePath) -> LatticePath:
    """Mirror in the diagonal (swap E and N)."""
    return LatticePath(p.steps.translate(str.maketrans("EN", "NE")))


def area_under(p: LatticePath) -> int:
    """Area between the path and the x-axis: each E-step adds the current height."""
    height = area = 0
    for s in p.steps:
        if s == "N":
            height += 1
        else:
            area += height
    return area


def area_left(p: LatticePath) -> int:
    """Area between the path and the y-axis: each N-step adds the current x."""
    x = area = 0
    for s in p.steps:
        if s == "E":
            x += 1
        else:
            area += x
    return area


def path_to_ferrers(p: LatticePath) -> FerrersDiagram:
    """Ferrers diagram whose boundary is ``E + p + N`` started at ``(-1, 0)``.

    Each N-step of the augmented path closes a row whose length is the
    current x plus one, so area = area_left(p) + len(p) + 1.
    """
    x = 0
    rows = []
    for s in p.steps + "N":
        if s == "E":
            x += 1
        else:
            rows.append(x + 1)
    return FerrersDiagram(tuple(reversed(rows)))


def ferrers_to_path(f: FerrersDiagram) -> LatticePath:
    if not isinstance(f, FerrersDiagram):
        f = FerrersDiagram(tuple(f))
    if f.semiperimeter < 2:
        raise DomainError("the empty diagram has no boundary path")
    steps = []
    x = 0
    for r in reversed(f.rows):
        steps.append("E" * (r - 1 - x))
        steps.append("N")
        x = r - 1
    # drop the closing N of the top row (the prepended E is implicit)
    return LatticePath("".join(steps)[:-1])


# -- enumeration ------------------------------------------------------------------


def enumerate_words(
    n: int, m: int, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Iterator[Word]:
    """All ``m**n`` words in lexicographic order."""
    if n < 0 or m < 1:
        raise DomainError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    if m**n > budget:
        raise BudgetExceededError(m**n, budget)
    for letters in itertools.product(range(1, m + 1), repeat=n):
        yield Word(letters, m)


def enumerate_paths(n: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator[LatticePath]:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if 2**n > budget:
        raise BudgetExceededError(2**n, budget)
    for steps in itertools.product("EN", repeat=n):
        yield LatticePath("".join(steps))


def _partitions_in_box(total_rows: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing sequences of ``total_rows`` parts in ``1..max_part``."""
    if total_rows == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in _partitions_in_box(total_rows - 1, first):
            yield (first,) + rest


def enumerate_ferrers(semiperimeter: int) -> Iterator[FerrersDiagram]:
    """All Ferrers diagrams with the given height + width, built directly from partitions."""
    for height in range(1, semiperimeter):
        width = semiperimeter - height
        for rest in _partitions_in_box(height - 1, width):
            yield FerrersDiagram((width,) + rest)


# -- text formats -------------------------------------------------------------------


def parse_word(text: str, m: int | None = None) -> Word:
    letters = tuple(int(t) for t in text.split(",") if t.strip())
    return Word(letters, m if m is not None else max(letters, default=1))


def parse_path(text: str) -> LatticePath:
    return LatticePath(text.strip().upper())


def parse_ferrers(text: str) -> FerrersDiagram:
    return FerrersDiagram(tuple(int(t) for t in text.split(",") if t.strip()))
