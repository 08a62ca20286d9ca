"""h-index truncation, log binning and the log-log linear fit with its F test."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from .special import f_critical, f_sf


class AnalysisError(ValueError):
    """Base class for errors raised by the impact pipeline."""


class EmptyInputError(AnalysisError):
    pass


class EmptyTruncationError(AnalysisError):
    pass


class DegenerateRangeError(AnalysisError):
    pass


class BinRangeError(AnalysisError):
    def __init__(self, value: float, lower: float, upper: float):
        super().__init__(f"value {value!r} lies outside bin range [{lower!r}, {upper!r}]")
        self.value = value


class DegenerateFitError(AnalysisError):
    pass


class InsufficientPointsError(AnalysisError):
    pass


class Significance(str, Enum):
    NONE = "none"
    FIVE_PERCENT = "five_percent"
    ONE_PERCENT = "one_percent"


@dataclass(frozen=True)
class HIndexResult:
    h: int


@dataclass(frozen=True)
class TruncatedDistribution:
    counts: tuple[int, ...]
    min_inlinks: int
    max_inlinks: int
    total_range: int
    total_inlinks: int
    # positions of the retained works in the input list, same order as counts
    indices: tuple[int, ...] = field(default=(), compare=False)

    @property
    def h(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class BinSpec:
    k: int
    lower: float
    upper: float
    domain: str = "linear"

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"bin count must be >= 2, got {self.k}")
        if self.domain not in ("linear", "log"):
            raise ValueError(f"domain must be 'linear' or 'log', got {self.domain!r}")
        if not self.upper > self.lower:
            raise DegenerateRangeError(f"bin range is degenerate: lower={self.lower!r}, upper={self.upper!r}")

    @property
    def width(self) -> float:
        return (self.upper - self.lower) / self.k

    def upper_edges(self) -> np.ndarray:
        # multiply before dividing so edges that are exact integers stay exact
        span = self.upper - self.lower
        edges = self.lower + span * np.arange(1, self.k + 1) / self.k
        edges[-1] = self.upper
        return edges

    def midpoints(self) -> np.ndarray:
        span = self.upper - self.lower
        return self.lower + span * (2 * np.arange(self.k) + 1) / (2 * self.k)


@dataclass(frozen=True)
class BinnedHistogram:
    spec: BinSpec
    counts: np.ndarray
    midpoints: np.ndarray


@dataclass(frozen=True)
class LinearFitResult:
    slope: float
    intercept: float
    r_squared: float
    f_stat: float
    n: int
    p_value: float
    significance: Significance

    @property
    def df(self) -> int:
        return self.n - 2

    @property
    def v1(self) -> int:
        return self.n - self.df - 1

    @property
    def v2(self) -> int:
        return self.df


@dataclass(frozen=True)
class SummaryStats:
    n_works: int
    uncited_fraction: float


def h_index(counts: Sequence[int]) -> HIndexResult:
    ranked = sorted(counts, reverse=True)
    h = 0
    for rank, c in enumerate(ranked, start=1):
        if c >= rank:
            h = rank
        else:
            break
    return HIndexResult(h)


def truncate_top_h(counts: Sequence[int]) -> TruncatedDistribution:
    """Keep the h most-cited works, ties broken by input order."""
    h = h_index(counts).h
    if h == 0:
        raise EmptyTruncationError("h-index is 0; nothing to analyze after truncation")
    order = sorted(range(len(counts)), key=lambda i: -counts[i])[:h]
    kept = tuple(int(counts[i]) for i in order)
    lo, hi = kept[-1], kept[0]
    return TruncatedDistribution(
        counts=kept,
        min_inlinks=lo,
        max_inlinks=hi,
        total_range=hi - lo + 1,
        total_inlinks=sum(kept),
        indices=tuple(order),
    )


def bin_frequencies(values: Sequence[float], spec: BinSpec) -> BinnedHistogram:
    """Allocate values into ``spec.k`` equal-width bins with Excel FREQUENCY rules.

    Bin j holds values in (edge_j, edge_{j+1}]; bin 0 also holds ``spec.lower``.
    """
    v = np.asarray(values, dtype=float)
    bad = v[(v < spec.lower) | (v > spec.upper) | np.isnan(v)]
    if bad.size:
        raise BinRangeError(float(bad[0]), spec.lower, spec.upper)
    idx = np.searchsorted(spec.upper_edges(), v, side="left")
    counts = np.bincount(idx, minlength=spec.k).astype(np.int64)
    return BinnedHistogram(spec=spec, counts=counts, midpoints=spec.midpoints())


def _log_transform(counts: np.ndarray, transform: str) -> np.ndarray:
    if transform == "log1p":
        return np.log1p(counts)
    if transform == "log_zero_plus_one":
        # ln(c) for c > 0 and ln(0 + 1) = 0 for uncited works
        out = np.zeros_like(counts, dtype=float)
        pos = counts > 0
        out[pos] = np.log(counts[pos])
        return out
    raise ValueError(f"unknown transform {transform!r}")


def log_pipeline(dist: TruncatedDistribution, k: int = 25, transform: str = "log1p"):
    """Log-bin a truncated distribution.

    Returns ``(x, y, hist)`` where ``x[j] = ln(works in bin j + 1)`` and
    ``y[j]`` is the midpoint of log bin j.
    """
    if dist.min_inlinks == dist.max_inlinks:
        raise DegenerateRangeError(
            f"all retained works have {dist.min_inlinks} inlinks; log range is empty"
        )
    logged = _log_transform(np.asarray(dist.counts, dtype=float), transform)
    spec = BinSpec(k=k, lower=float(logged.min()), upper=float(logged.max()), domain="log")
    hist = bin_frequencies(logged, spec)
    x = np.log1p(hist.counts.astype(float))
    y = hist.midpoints.copy()
    return x, y, hist


def ols_fit(x: Sequence[float], y: Sequence[float]) -> LinearFitResult:
    """Least-squares line ``x ~ intercept + slope * y``.

    ``x`` is the fitted variable, matching the log-works-against-log-inlinks
    orientation of the charts. R^2 and F do not depend on the orientation.
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise ValueError(f"x and y must be 1-d of equal length, got {xa.shape} and {ya.shape}")
    n = xa.size
    if n < 3:
        raise InsufficientPointsError(f"need at least 3 points for a fit with F test, got {n}")
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    sxy = float(dx @ dy)
    if sxx == 0.0 or syy == 0.0:
        which = "x" if sxx == 0.0 else "y"
        raise DegenerateFitError(f"{which} has zero variance; the fit is undefined")
    slope = sxy / syy
    intercept = float(xa.mean() - slope * ya.mean())
    r2 = min(1.0, sxy * sxy / (sxx * syy))
    df = n - 2
    if 1.0 - r2 <= 1e-13:
        r2, f = 1.0, math.inf
    else:
        f = r2 / (1.0 - r2) * df
    p, level = f_significance(f, 1, df)
    return LinearFitResult(
        slope=slope, intercept=intercept, r_squared=r2, f_stat=f, n=n, p_value=p, significance=level
    )


def f_significance(f: float, v1: int, v2: int) -> tuple[float, Significance]:
    """Upper-tail p-value of ``f`` under F(v1, v2) and its significance level.

    A level is reached when ``p <= level`` or when ``f`` is at or above the
    critical value as printed in an F table, i.e. rounded to two decimals
    (4.28 and 7.88 for v1=1, v2=23; the exact p at 7.88 is 0.010005).
    """
    if v1 < 1 or v2 < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got v1={v1}, v2={v2}")
    if math.isnan(f) or f == -math.inf or f < 0:
        raise ValueError(f"F statistic must be finite and >= 0 (or +inf), got {f}")
    p = f_sf(f, v1, v2)
    if p <= 0.01 or f >= table_critical_value(0.99, v1, v2):
        return p, Significance.ONE_PERCENT
    if p <= 0.05 or f >= table_critical_value(0.95, v1, v2):
        return p, Significance.FIVE_PERCENT
    return p, Significance.NONE


@lru_cache(maxsize=256)
def table_critical_value(level: float, v1: int, v2: int) -> float:
    return round(f_critical(level, v1, v2), 2)


def summary_stats(counts: Sequence[int]) -> SummaryStats:
    n = len(counts)
    if n == 0:
        raise EmptyInputError("no works to summarize")
    uncited = sum(1 for c in counts if c == 0)
    return SummaryStats(n_works=n, uncited_fraction=uncited / n)
