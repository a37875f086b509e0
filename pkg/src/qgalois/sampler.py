"""Seeded Monte Carlo for the four constructions of the inversion law.

Constructions: inversions of a uniform word, the V-sum over ordered pairs,
the U-statistic with auxiliary uniform ranks, and the area of a uniform
Ferrers diagram.  Vectorized batch versions work on ``(reps, n)`` arrays.

Reproducibility: a :class:`SampleStream` is keyed by ``(master_seed,
stream_index)`` and derives its generator from :class:`numpy.random.SeedSequence`.
Batch jobs split repetitions into fixed-size chunks, chunk ``c`` drawing from
``stream.substream(c)``, so output does not depend on the number of workers.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinat import LatticePath, Word, inversions, path_to_ferrers
from .errors import DomainError, PreconditionError

__all__ = [
    "DEFAULT_SEED",
    "SampleStream",
    "UPair",
    "BatchStats",
    "batch_stats",
    "sample_word",
    "sample_words",
    "inversions_batch",
    "v_statistic",
    "sample_upairs",
    "u_statistic",
    "u_statistic_naive",
    "u_statistic_batch",
    "sample_u_batch",
    "sample_ferrers",
    "ferrers_from_steps",
    "sample_ferrers_batch",
    "hoeffding_xi",
    "pair_kernel",
    "hoeffding_eta",
    "sample_hoeffding",
    "batch_joint",
    "joint_to_csv",
    "joint_to_json",
    "v_decomposition_variance",
    "u_decomposition_variance",
]

DEFAULT_SEED = 20_240_601
DEFAULT_CHUNK = 10_000


class SampleStream:
    """Deterministic random source for one ``(master_seed, stream_index)`` pair.

    Instances are stateful and meant for a single consumer; build a fresh one
    with the same key to replay the same draws.
    """

    def __init__(self, master_seed: int = DEFAULT_SEED, stream_index: int = 0, _path=()):
        if stream_index < 0:
            raise DomainError("stream_index must be nonnegative")
        self.master_seed = int(master_seed) & (2**64 - 1)
        self.stream_index = int(stream_index)
        self._path = tuple(_path)
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,) + self._path)
        self.rng = np.random.Generator(np.random.PCG64(seq))

    def substream(self, i: int) -> SampleStream:
        """Independent child stream; depends only on the key, not on prior draws."""
        return SampleStream(self.master_seed, self.stream_index, self._path + (int(i),))

    def describe(self) -> dict:
        return {
            "master_seed": self.master_seed,
            "stream_index": self.stream_index,
            "path": list(self._path),
        }

    def __repr__(self):
        return f"SampleStream(master_seed={self.master_seed}, stream_index={self.stream_index}, path={self._path})"


@dataclass(frozen=True)
class UPair:
    x: int
    y: float

    def __post_init__(self):
        if self.x < 1:
            raise DomainError(f"letter must be >= 1, got {self.x}")
        if not 0.0 < self.y < 1.0:
            raise DomainError(f"y must lie in (0, 1), got {self.y}")


@dataclass(frozen=True)
class BatchStats:
    count: int
    mean: float
    variance: float
    letter_counts: tuple[int, ...] | None = None

    @property
    def standard_error(self) -> float:
        return float(np.sqrt(self.variance / self.count))


def batch_stats(values, letter_counts=None) -> BatchStats:
    v = np.asarray(values, dtype=float)
    if v.size < 1:
        raise DomainError("need at least one value")
    var = float(v.var(ddof=1)) if v.size > 1 else 0.0
    lc = tuple(int(c) for c in letter_counts) if letter_counts is not None else None
    return BatchStats(int(v.size), float(v.mean()), var, lc)


# -- words and the V-sum ---------------------------------------------------------------


def sample_word(n: int, m: int, s: SampleStream) -> Word:
    if n < 0 or m < 1:
        raise DomainError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    return Word(tuple(int(x) for x in s.rng.integers(1, m + 1, size=n)), m)


def sample_words(n: int, m: int, reps: int, s: SampleStream) -> np.ndarray:
    """``(reps, n)`` array of i.i.d. uniform letters in ``1..m``."""
    return s.rng.integers(1, m + 1, size=(reps, n), dtype=np.int64)


def inversions_batch(words: np.ndarray, m: int) -> np.ndarray:
    """Row-wise inversion counts of an integer array with entries in ``1..m``."""
    words = np.asarray(words)
    reps, n = words.shape
    letters = np.arange(1, m + 1)
    # greater[r, v-1] = number of letters seen so far in row r that exceed v
    greater = np.zeros((reps, m), dtype=np.int64)
    rows = np.arange(reps)
    total = np.zeros(reps, dtype=np.int64)
    for j in range(n):
        x = words[:, j]
        total += greater[rows, x - 1]
        greater += letters[None, :] < x[:, None]
    return total


def v_statistic(w: Word) -> int:
    """``sum_{i<j} 1{X_i > X_j}`` for the letters of ``w``; equal to ``inversions(w)``."""
    xs = w.letters
    return sum(1 for j in range(len(xs)) for i in range(j) if xs[i] > xs[j])


# -- U-statistic -----------------------------------------------------------------------


def sample_upairs(n: int, m: int, s: SampleStream) -> list[UPair]:
    xs = s.rng.integers(1, m + 1, size=n)
    ys = s.rng.random(n)
    # (0, 1) open interval and distinct values; redraw the rare offenders
    while True:
        bad = ys <= 0.0
        _, first = np.unique(ys, return_index=True)
        dup = np.ones(n, dtype=bool)
        dup[first] = False
        bad |= dup
        if not bad.any():
            break
        ys[bad] = s.rng.random(int(bad.sum()))
    return [UPair(int(x), float(y)) for x, y in zip(xs, ys)]


def _check_distinct(ys):
    if len(set(ys)) != len(ys):
        raise PreconditionError("y-values must be pairwise distinct")


def u_statistic(pairs: Sequence[UPair]) -> int:
    """Inversions of the x-letters read in increasing order of y."""
    _check_distinct([p.y for p in pairs])
    ordered = sorted(pairs, key=lambda p: p.y)
    m = max((p.x for p in pairs), default=1)
    return inversions(Word(tuple(p.x for p in ordered), m))


def u_statistic_naive(pairs: Sequence[UPair]) -> int:
    """Double sum ``sum_{i,j} 1{x_i > x_j} 1{y_i < y_j}`` (test oracle)."""
    _check_distinct([p.y for p in pairs])
    return sum(
        1 for a in pairs for b in pairs if a.x > b.x and a.y < b.y
    )


def u_statistic_batch(xs: np.ndarray, ys: np.ndarray, m: int) -> np.ndarray:
    order = np.argsort(ys, axis=1, kind="stable")
    return inversions_batch(np.take_along_axis(xs, order, axis=1), m)


def sample_u_batch(n: int, m: int, reps: int, s: SampleStream) -> np.ndarray:
    xs = s.rng.integers(1, m + 1, size=(reps, n), dtype=np.int64)
    ys = s.rng.random((reps, n))
    # ties in 53-bit uniforms are astronomically rare; redraw affected rows
    srt = np.sort(ys, axis=1)
    tied = (np.diff(srt, axis=1) == 0).any(axis=1) | (srt[:, 0] == 0.0)
    while tied.any():
        ys[tied] = s.rng.random((int(tied.sum()), n))
        srt = np.sort(ys, axis=1)
        tied = (np.diff(srt, axis=1) == 0).any(axis=1) | (srt[:, 0] == 0.0)
    return u_statistic_batch(xs, ys, m)


# -- Ferrers diagrams ---------------------------------------------------------------------


def sample_ferrers(n: int, s: SampleStream) -> tuple[int, int]:
    """``(area, height)`` of a uniform Ferrers diagram with semiperimeter ``n + 2``."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    steps = s.rng.integers(0, 2, size=n)
    f = path_to_ferrers(LatticePath("".join("N" if b else "E" for b in steps)))
    return f.area, f.height


def ferrers_from_steps(steps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``(area, height)`` for a ``(reps, n)`` 0/1 array (1 = N-step)."""
    steps = np.asarray(steps, dtype=np.int64)
    n = steps.shape[1]
    east_before = np.cumsum(1 - steps, axis=1) - (1 - steps)
    area_left = (steps * east_before).sum(axis=1)
    height = steps.sum(axis=1) + 1
    return area_left + n + 1, height


def sample_ferrers_batch(n: int, reps: int, s: SampleStream) -> tuple[np.ndarray, np.ndarray]:
    return ferrers_from_steps(s.rng.integers(0, 2, size=(reps, n), dtype=np.int64))


# -- Hoeffding decomposition -------------------------------------------------------------


def hoeffding_xi(x, y, m):
    """Linear projection ``-(2/m) (x - (m+1)/2) (y - 1/2)``; works on arrays."""
    return -(2.0 / m) * (x - (m + 1) / 2.0) * (y - 0.5)


def pair_kernel(x1, y1, x2, y2):
    """Symmetric kernel ``1{x1>x2}1{y1<y2} + 1{x2>x1}1{y2<y1}``."""
    return ((x1 > x2) & (y1 < y2)).astype(np.int64) + ((x2 > x1) & (y2 < y1)).astype(np.int64)


def hoeffding_eta(x1, y1, x2, y2, m):
    """Degenerate remainder of the pair kernel after removing mean and projections."""
    mu = (m - 1) / (2.0 * m)
    return pair_kernel(x1, y1, x2, y2) - mu - hoeffding_xi(x1, y1, m) - hoeffding_xi(x2, y2, m)


def sample_hoeffding(m: int, draws: int, s: SampleStream) -> dict[str, np.ndarray]:
    """Draw ``draws`` independent pairs ``(Z_1, Z_2)`` and return xi_1, xi_2, eta_12."""
    x = s.rng.integers(1, m + 1, size=(2, draws))
    y = s.rng.random((2, draws))
    return {
        "xi1": hoeffding_xi(x[0], y[0], m),
        "xi2": hoeffding_xi(x[1], y[1], m),
        "eta": hoeffding_eta(x[0], y[0], x[1], y[1], m),
    }


# -- joint samples of (V, N_1..N_m) -----------------------------------------------------------


def _joint_chunk(n, m, reps, s):
    words = sample_words(n, m, reps, s)
    v = inversions_batch(words, m)
    counts = np.stack([(words == k).sum(axis=1) for k in range(1, m + 1)], axis=1)
    return np.column_stack([v, counts])


def batch_joint(
    n: int,
    m: int,
    reps: int,
    s: SampleStream,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> np.ndarray:
    """``(reps, 1 + m)`` integer array: inversion count then letter counts per sample."""
    if reps < 1:
        raise DomainError("reps must be >= 1")
    sizes = [min(chunk, reps - start) for start in range(0, reps, chunk)]
    jobs = [(n, m, size, s.substream(c)) for c, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _joint_chunk(*a), jobs))
    else:
        parts = [_joint_chunk(*a) for a in jobs]
    return np.concatenate(parts, axis=0)


def _joint_header(m):
    return ["rep", "V"] + [f"N{k}" for k in range(1, m + 1)]


def joint_to_csv(samples: np.ndarray, stream: SampleStream, n: int, m: int) -> str:
    """CSV with ``#``-prefixed metadata lines echoing the seed layout."""
    buf = io.StringIO()
    meta = dict(stream.describe(), n=n, m=m, reps=len(samples), chunk=DEFAULT_CHUNK)
    buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_joint_header(m))
    for i, row in enumerate(samples):
        w.writerow([i] + [int(v) for v in row])
    return buf.getvalue()


def joint_to_json(samples: np.ndarray, stream: SampleStream, n: int, m: int) -> dict:
    header = _joint_header(m)
    return {
        "metadata": dict(stream.describe(), n=n, m=m, reps=len(samples), chunk=DEFAULT_CHUNK),
        "records": [dict(zip(header, [i] + [int(v) for v in row])) for i, row in enumerate(samples)],
    }


# -- exact variance decompositions --------------------------------------------------------------


def v_decomposition_variance(n: int, m: int) -> tuple[Fraction, Fraction]:
    """Exact ``(linear part, residual part)`` of ``Var V`` from the projection of ``1{X_i > X_j}``.

    Single-letter and pair moments are enumerated over the alphabet; the
    position weights ``(n + 1 - 2i)`` are summed explicitly.
    """
    letters = range(1, m + 1)
    centre = Fraction(m + 1, 2)
    var_x = sum((Fraction(x) - centre) ** 2 for x in letters) / m
    p_gt = Fraction(sum(1 for a in letters for b in letters if a > b), m * m)
    var_ind = p_gt * (1 - p_gt)
    # xi'_i = X'_i / m and xi''_j = -X'_j / m
    var_proj = var_x / (m * m)
    var_resid = var_ind - 2 * var_proj
    weights = sum((n + 1 - 2 * i) ** 2 for i in range(1, n + 1))
    return Fraction(weights) * var_x / (m * m), Fraction(n * (n - 1), 2) * var_resid


def u_decomposition_variance(n: int, m: int) -> tuple[Fraction, Fraction]:
    """Exact ``(n(n-1)^2 Var xi, C(n,2) Var eta)`` for the U-statistic form."""
    letters = range(1, m + 1)
    centre = Fraction(m + 1, 2)
    var_x = sum((Fraction(x) - centre) ** 2 for x in letters) / m
    var_y = Fraction(1, 12)  # centred uniform on (0, 1)
    var_xi = Fraction(4, m * m) * var_x * var_y
    p_gt = Fraction(sum(1 for a in letters for b in letters if a > b), m * m)
    mu = p_gt  # 2 * P(X_i > X_j) * P(Y_i < Y_j)
    var_kernel = mu * (1 - mu)
    var_eta = var_kernel - 2 * var_xi
    return n * (n - 1) ** 2 * var_xi, Fraction(n * (n - 1), 2) * var_eta
