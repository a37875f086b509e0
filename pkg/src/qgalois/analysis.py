"""Convergence diagnostics: CLT/LLT curves, characteristic-function probe, TV curves,
and Monte Carlo checks, packaged as serializable reports."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple, Sequence

import numpy as np
from scipy import stats

from .dist import (
    ExactPMF,
    closed_form_moments,
    exact_pmf,
    fraction_to_json,
    kolmogorov_distance_to_normal,
    llt_residual,
    permutation_inversion_pmf,
    tv_bound,
    tv_distance,
)
from .errors import DomainError
from .qpoly import eval_unit_circle, galois_poly
from .sampler import SampleStream, sample_ferrers_batch
from .serialize import dumps, format_float

__all__ = [
    "CurveRow",
    "CurveReport",
    "clt_curve",
    "llt_curve",
    "CFProbe",
    "cf_probe",
    "cf_abs",
    "tv_curve",
    "FerrersJointReport",
    "ferrers_joint_check",
    "ChiSquareResult",
    "chi_square_gof",
    "variance_standard_error",
]

# Pilot-frozen tolerance for asymptotic-independence correlations.
CORRELATION_TOLERANCE = 0.05


def _jsonable(v):
    if isinstance(v, Fraction):
        return fraction_to_json(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


def _csv_cell(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return format_float(v)
    return str(_jsonable(v))


@dataclass(frozen=True)
class CurveRow:
    params: dict
    statistic: float
    extra: dict = field(default_factory=dict)


@dataclass
class CurveReport:
    """Labelled rows of ``(parameters, statistic)`` plus a metadata echo."""

    label: str
    rows: list[CurveRow]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.rows:
            raise DomainError("a curve needs at least one row")
        names = set(self.rows[0].params)
        if any(set(r.params) != names for r in self.rows):
            raise DomainError("parameter names differ between rows")

    def statistics(self) -> list[float]:
        return [r.statistic for r in self.rows]

    def lookup(self, **params) -> CurveRow:
        for r in self.rows:
            if all(r.params.get(k) == v for k, v in params.items()):
                return r
        raise KeyError(params)

    def columns(self) -> list[str]:
        extra = []
        for r in self.rows:
            extra.extend(k for k in r.extra if k not in extra)
        return list(self.rows[0].params) + ["statistic"] + extra

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = self.columns()
        w.writerow(cols)
        for r in self.rows:
            merged = {**r.params, "statistic": r.statistic, **r.extra}
            w.writerow([_csv_cell(merged.get(c, "")) for c in cols])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "metadata": {k: _jsonable(v) for k, v in self.metadata.items()},
            "rows": [
                {
                    "params": {k: _jsonable(v) for k, v in r.params.items()},
                    "statistic": _jsonable(r.statistic),
                    **{k: _jsonable(v) for k, v in r.extra.items()},
                }
                for r in self.rows
            ],
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


# -- exact curves -----------------------------------------------------------------


def clt_curve(m: int, ns: Sequence[int]) -> CurveReport:
    """Kolmogorov distance (continuity corrected) of the exact law to its normal approximation."""
    rows = []
    for n in ns:
        if n < 2 or m < 2:
            raise DomainError(f"need n >= 2 and m >= 2, got n={n}, m={m}")
        mom = closed_form_moments(n, m)
        d = kolmogorov_distance_to_normal(exact_pmf(n, m), float(mom.mean), mom.sd)
        rows.append(CurveRow({"n": n}, d, {"mean": mom.mean, "variance": mom.variance}))
    return CurveReport(f"clt m={m}", rows, {"m": m, "metric": "kolmogorov"})


def llt_curve(ms: Sequence[int], ns: Sequence[int]) -> CurveReport:
    """Grid of LLT residuals; ``statistic`` uses exact moments, ``approx`` the leading-order ones."""
    rows = []
    for m in ms:
        for n in ns:
            exact = llt_residual(n, m)
            approx = llt_residual(n, m, use_approx_moments=True)
            rows.append(
                CurveRow({"m": m, "n": n}, exact, {"approx": approx, "ratio": approx / exact})
            )
    return CurveReport("llt", rows, {"ms": list(ms), "ns": list(ns)})


class CFProbe(NamedTuple):
    c_hat_small: float
    c_hat_large: float


def cf_abs(n: int, m: int, theta) -> np.ndarray:
    """``|E e^{i theta G}|`` from the exact coefficients of the Galois polynomial."""
    return np.abs(eval_unit_circle(galois_poly(n, m), np.asarray(theta, dtype=float), scale=m**n))


def cf_probe(n: int, m: int, theta_grid_size: int = 64) -> CFProbe:
    """Observed constants in ``|phi| <= exp(-c n^3 theta^2)`` and ``|phi| <= exp(-c n)``.

    The small-angle regime uses a log grid on ``[1e-3/n, 1/n]``, the large one a
    uniform grid on ``[1/n, pi]``.  ``|phi|`` is even in theta, so only
    positive angles are scanned.
    """
    if n < 2 or m < 2:
        raise DomainError(f"need n >= 2 and m >= 2, got n={n}, m={m}")
    if theta_grid_size < 16:
        raise DomainError("need at least 16 grid points per regime")
    small = np.logspace(math.log10(1e-3 / n), math.log10(1.0 / n), theta_grid_size)
    large = np.linspace(1.0 / n, math.pi, theta_grid_size)
    with np.errstate(divide="ignore"):
        ls = -np.log(cf_abs(n, m, small))
        ll = -np.log(cf_abs(n, m, large))
    return CFProbe(float(np.min(ls / (n**3 * small**2))), float(np.min(ll / n)))


def tv_curve(n: int, ms: Sequence[int]) -> CurveReport:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    perm = permutation_inversion_pmf(n)
    rows = []
    for m in ms:
        tv = tv_distance(exact_pmf(n, m), perm)
        bound = tv_bound(n, m)
        rows.append(
            CurveRow({"m": m}, float(tv), {"tv": tv, "bound": bound, "within_bound": tv <= bound})
        )
    return CurveReport(f"tv n={n}", rows, {"n": n})


# -- Monte Carlo checks --------------------------------------------------------------------


def variance_standard_error(x: np.ndarray) -> float:
    """Standard error of the sample variance, ``sqrt((mu_4 - s^4) / N)``."""
    x = np.asarray(x, dtype=float)
    d = x - x.mean()
    m2 = np.mean(d * d)
    m4 = np.mean(d**4)
    return float(math.sqrt(max(m4 - m2 * m2, 0.0) / len(x)))


@dataclass(frozen=True)
class FerrersJointReport:
    n: int
    reps: int
    correlation: float
    area_mean: float
    area_mean_expected: Fraction
    area_mean_z: float
    height_mean: float
    height_mean_expected: float
    height_mean_z: float
    height_var: float
    height_var_expected: float
    height_var_z: float
    stream: dict

    @property
    def passed(self) -> bool:
        return (
            abs(self.correlation) < CORRELATION_TOLERANCE
            and abs(self.area_mean_z) <= 4
            and abs(self.height_mean_z) <= 4
            and abs(self.height_var_z) <= 4
        )

    def to_json(self) -> dict:
        out = {k: _jsonable(v) for k, v in self.__dict__.items()}
        out["passed"] = self.passed
        return out


def ferrers_joint_check(n: int, reps: int, s: SampleStream) -> FerrersJointReport:
    """Sample uniform Ferrers diagrams and compare area/height against their limits.

    Area is standardized as ``(A - n^2/8) / sqrt(n^3/48)`` and height as
    ``(H - n/2) / sqrt(n/4)``; their empirical correlation should be near 0.
    """
    if n < 4:
        raise DomainError(f"n must be >= 4, got {n}")
    if reps < 10_000:
        raise DomainError(f"reps must be >= 1e4, got {reps}")
    area, height = sample_ferrers_batch(n, reps, s)
    za = (area - n * n / 8) / math.sqrt(n**3 / 48)
    zh = (height - n / 2) / math.sqrt(n / 4)
    corr = float(np.corrcoef(za, zh)[0, 1])

    mom = closed_form_moments(n, 2)
    area_expected = mom.mean + n + 1
    area_se = math.sqrt(float(mom.variance) / reps)
    h1 = (height - 1).astype(float)
    h_mean_expected = n / 2 + 1
    h_se = math.sqrt(n / 4 / reps)
    return FerrersJointReport(
        n=n,
        reps=reps,
        correlation=corr,
        area_mean=float(area.mean()),
        area_mean_expected=area_expected,
        area_mean_z=float((area.mean() - float(area_expected)) / area_se),
        height_mean=float(height.mean()),
        height_mean_expected=h_mean_expected,
        height_mean_z=float((height.mean() - h_mean_expected) / h_se),
        height_var=float(h1.var(ddof=1)),
        height_var_expected=n / 4,
        height_var_z=float((h1.var(ddof=1) - n / 4) / variance_standard_error(h1)),
        stream=s.describe(),
    )


class ChiSquareResult(NamedTuple):
    statistic: float
    dof: int
    pvalue: float


def chi_square_gof(samples, pmf: ExactPMF, min_expected: float = 5.0) -> ChiSquareResult:
    """Pearson goodness of fit of integer samples to an exact PMF.

    Adjacent outcomes are pooled left to right until each bin expects at least
    ``min_expected`` counts; samples outside the support fail outright.
    """
    samples = np.asarray(samples, dtype=np.int64)
    total = len(samples)
    size = len(pmf)
    if samples.min() < 0 or samples.max() >= size:
        return ChiSquareResult(math.inf, 0, 0.0)
    observed = np.bincount(samples, minlength=size)
    expected = pmf.probabilities() * total
    obs_bins, exp_bins = [], []
    o_acc = e_acc = 0.0
    for o, e in zip(observed, expected):
        o_acc += o
        e_acc += e
        if e_acc >= min_expected:
            obs_bins.append(o_acc)
            exp_bins.append(e_acc)
            o_acc = e_acc = 0.0
    if e_acc > 0 or o_acc > 0:
        if exp_bins:
            obs_bins[-1] += o_acc
            exp_bins[-1] += e_acc
        else:
            obs_bins.append(o_acc)
            exp_bins.append(e_acc)
    obs_bins = np.array(obs_bins)
    exp_bins = np.array(exp_bins)
    stat = float(np.sum((obs_bins - exp_bins) ** 2 / exp_bins))
    dof = len(obs_bins) - 1
    if dof < 1:
        return ChiSquareResult(stat, 0, 1.0)
    return ChiSquareResult(stat, dof, float(stats.chi2.sf(stat, dof)))
