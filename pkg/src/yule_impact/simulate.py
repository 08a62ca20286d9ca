"""Simon's urn process, Yule's pure-birth genus model and log-log tail slopes.

Randomness comes from ``numpy.random.Generator(PCG64(seed))``; a run is a
pure function of its config, so the same seed gives bitwise-identical output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .impact import InsufficientPointsError, ols_fit
from .special import yule_limit_pmf

ARRIVAL_MODELS = ("cohort", "stream")


class ConfigError(ValueError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class SimonProcessConfig:
    alpha: float
    epochs: int
    initial_elements: int = 1
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ConfigError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if self.initial_elements < 1:
            raise ConfigError(f"initial_elements must be >= 1, got {self.initial_elements}")

    @property
    def rho(self) -> float:
        """Exponent parameter of the limiting Yule distribution, 1 / (1 - alpha)."""
        return math.inf if self.alpha == 1.0 else 1.0 / (1.0 - self.alpha)


@dataclass(frozen=True)
class SimonPopulation:
    sizes: np.ndarray
    epochs_run: int

    def size_frequencies(self) -> dict[int, int]:
        counts = np.bincount(self.sizes)
        return {int(s): int(c) for s, c in enumerate(counts) if c}


def run_simon(config: SimonProcessConfig) -> SimonPopulation:
    """Grow a population one unit per epoch.

    With probability alpha the unit founds a new element of size 1; otherwise
    a unit already in the population is drawn uniformly and its element grows,
    which selects elements in proportion to their size.
    """
    rng = make_rng(config.seed)
    n0, epochs = config.initial_elements, config.epochs
    is_new = (rng.random(epochs) < config.alpha).tolist()
    pick = rng.random(epochs).tolist()
    owner = list(range(n0)) + [0] * epochs
    n_units = n0
    n_elements = n0
    for t in range(epochs):
        if is_new[t]:
            owner[n_units] = n_elements
            n_elements += 1
        else:
            owner[n_units] = owner[int(pick[t] * n_units)]
        n_units += 1
    sizes = np.bincount(np.asarray(owner, dtype=np.int64), minlength=n_elements)
    return SimonPopulation(sizes=sizes, epochs_run=epochs)


def yule_cohort_pmf(t: float, n: int) -> float:
    """P(genus has n species after t doubling periods), starting from one species.

    Geometric with success probability 2**-t, so the mean is 2**t.
    """
    if t < 0 or not math.isfinite(t):
        raise ValueError(f"t must be finite and >= 0, got {t}")
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    p = 2.0 ** -t
    return p * (1.0 - p) ** (int(n) - 1)


@dataclass(frozen=True)
class YuleCohortConfig:
    t: float
    n_genera: int
    seed: int = 0

    def __post_init__(self):
        if self.t < 0:
            raise ConfigError(f"t must be >= 0, got {self.t}")
        if self.n_genera < 1:
            raise ConfigError(f"n_genera must be >= 1, got {self.n_genera}")


@dataclass(frozen=True)
class GenusHistogram:
    t: float
    counts: dict[int, int]  # genus size -> number of genera

    @property
    def monospecific_count(self) -> int:
        return self.counts.get(1, 0)

    @property
    def total_genera(self) -> int:
        return sum(self.counts.values())

    def mean_size(self) -> float:
        return sum(s * c for s, c in self.counts.items()) / self.total_genera


def _histogram(t: float, sizes: np.ndarray) -> GenusHistogram:
    values, freq = np.unique(sizes, return_counts=True)
    return GenusHistogram(t=float(t), counts={int(s): int(c) for s, c in zip(values, freq)})


def stream_founding_times(n: int, t_end: float, rho: float, rng: np.random.Generator) -> np.ndarray:
    """Founding times of ``n`` genera whose number grows geometrically.

    Genera multiply at ``rho`` times the species rate. Given the genus count at
    ``t_end``, founding times of a pure-birth process are i.i.d. with density
    proportional to 2**(rho * u) on [0, t_end]; the first genus is pinned at 0.
    """
    g = rho * math.log(2.0)
    u = rng.random(n - 1)
    # inverse CDF of the truncated exponential growth density
    times = np.log1p(u * math.expm1(g * t_end)) / g if t_end > 0 else np.zeros(n - 1)
    return np.concatenate(([0.0], np.sort(times)))


def simulate_genera(
    arrival: str,
    total_genera: int,
    t_end: float,
    snapshots: Sequence[float],
    seed: int = 0,
    rho: float = 1.0,
) -> list[GenusHistogram]:
    """Pure-birth genus sizes observed at each snapshot time.

    ``arrival="cohort"`` founds every genus at t=0. ``arrival="stream"`` founds
    genera at geometrically increasing rate (see ``stream_founding_times``), so
    later snapshots contain more genera. Sizes are carried forward between
    snapshots with exact negative-binomial increments.
    """
    if arrival not in ARRIVAL_MODELS:
        raise ConfigError(f"unknown arrival model {arrival!r}; expected one of {ARRIVAL_MODELS}")
    if total_genera < 1:
        raise ConfigError(f"total_genera must be >= 1, got {total_genera}")
    if not (rho > 0):
        raise ConfigError(f"rho must be positive, got {rho}")
    snaps = [float(s) for s in snapshots]
    if any(b < a for a, b in zip(snaps, snaps[1:])):
        raise ConfigError(f"snapshots must be sorted, got {snaps}")
    if snaps and (snaps[0] < 0 or snaps[-1] > t_end):
        raise ConfigError(f"snapshots must lie within [0, {t_end}], got {snaps}")

    rng = make_rng(seed)
    if arrival == "cohort":
        born = np.zeros(total_genera)
    else:
        born = stream_founding_times(total_genera, t_end, rho, rng)

    sizes = np.zeros(total_genera, dtype=np.int64)  # 0 = not yet founded
    now = 0.0
    out = []
    for t in snaps:
        alive = sizes > 0
        if t > now and alive.any():
            n = sizes[alive]
            sizes[alive] = n + rng.negative_binomial(n, 2.0 ** -(t - now))
        founded = (~alive) & (born <= t)
        if founded.any():
            sizes[founded] = rng.geometric(2.0 ** -(t - born[founded]))
        now = t
        out.append(_histogram(t, sizes[sizes > 0]))
    return out


def limit_deviation(hist: Mapping[int, int] | GenusHistogram, rho: float, sizes: Sequence[int]) -> float:
    """Largest |ln(observed fraction) - ln(limit pmf)| over the given sizes."""
    counts = hist.counts if isinstance(hist, GenusHistogram) else hist
    total = sum(counts.values())
    worst = 0.0
    for s in sizes:
        c = counts.get(s, 0)
        if c == 0:
            return math.inf
        worst = max(worst, abs(math.log(c / total) - math.log(yule_limit_pmf(rho, s))))
    return worst


@dataclass(frozen=True)
class TailSlopeEstimate:
    slope: float
    intercept: float
    r_squared: float
    points_used: int


def tail_slope(histogram: Mapping[int, int], min_size: int = 1, contiguous: bool = True) -> TailSlopeEstimate:
    """Least-squares slope of ln(frequency) on ln(size) over sizes >= min_size.

    With ``contiguous`` (the default) the fit stops at the first size above
    ``min_size`` with zero frequency. Past that point the tail is a scatter of
    singleton sizes pinned at ln(1) = 0, which drags the slope toward zero.
    """
    if contiguous:
        pts = []
        s = min_size
        while histogram.get(s, 0) > 0:
            pts.append((s, histogram[s]))
            s += 1
    else:
        pts = sorted((s, f) for s, f in histogram.items() if s >= min_size and f > 0)
    if len(pts) < 3:
        raise InsufficientPointsError(f"need 3 sizes >= {min_size} with nonzero frequency, got {len(pts)}")
    ln_size = np.log([s for s, _ in pts])
    ln_freq = np.log([f for _, f in pts])
    fit = ols_fit(ln_freq, ln_size)
    return TailSlopeEstimate(
        slope=fit.slope, intercept=fit.intercept, r_squared=fit.r_squared, points_used=len(pts)
    )
