"""Per-researcher analysis rows and the files emitted for them."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .corpus import ResearcherProfile
from .impact import (
    AnalysisError,
    BinnedHistogram,
    LinearFitResult,
    log_pipeline,
    ols_fit,
    summary_stats,
    truncate_top_h,
)

REPORT_SCHEMA = "yule-impact/report/v1"
HISTOGRAM_COLUMNS = ("bin_index", "midpoint_log", "count", "ln_count_plus_1")
FIT_LINE_COLUMNS = ("y", "fitted_x")
SIZE_FREQ_COLUMNS = ("size", "count")


@dataclass
class ReportRow:
    name: str
    award_year: Optional[int] = None
    h: Optional[int] = None
    min_inlinks: Optional[int] = None
    max_inlinks: Optional[int] = None
    total_range: Optional[int] = None
    total_inlinks: Optional[int] = None
    r_squared: Optional[float] = None
    f_stat: Optional[float] = None
    p_value: Optional[float] = None
    significance: Optional[str] = None
    slope: Optional[float] = None
    intercept: Optional[float] = None
    uncited_fraction: Optional[float] = None
    n_works: Optional[int] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class ProfileAnalysis:
    row: ReportRow
    hist: Optional[BinnedHistogram] = None
    x: Optional[np.ndarray] = None
    y: Optional[np.ndarray] = None
    fit: Optional[LinearFitResult] = None


def analyze_profile(profile: ResearcherProfile, k: int = 25, transform: str = "log1p") -> ProfileAnalysis:
    """Run h-truncation, log binning and the fit for one researcher.

    Analysis failures are captured in ``row.error`` rather than raised.
    """
    row = ReportRow(name=profile.name, award_year=profile.award_year)
    counts = profile.counts
    try:
        stats = summary_stats(counts)
        row.n_works, row.uncited_fraction = stats.n_works, stats.uncited_fraction
        dist = truncate_top_h(counts)
        row.h = dist.h
        row.min_inlinks, row.max_inlinks = dist.min_inlinks, dist.max_inlinks
        row.total_range, row.total_inlinks = dist.total_range, dist.total_inlinks
        x, y, hist = log_pipeline(dist, k=k, transform=transform)
        fit = ols_fit(x, y)
    except AnalysisError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
        return ProfileAnalysis(row=row)
    row.r_squared, row.f_stat, row.p_value = fit.r_squared, fit.f_stat, fit.p_value
    row.significance = fit.significance.value
    row.slope, row.intercept = fit.slope, fit.intercept
    return ProfileAnalysis(row=row, hist=hist, x=x, y=y, fit=fit)


def _fmt(value, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.{digits}f}"


TABLE_COLUMNS = (
    "name", "award_year", "h", "min_inlinks", "max_inlinks", "total_range", "total_inlinks",
    "r_squared", "f_stat", "significance", "uncited_fraction", "error",
)


def format_table(rows: Sequence[ReportRow]) -> str:
    """Tab-separated report; R^2 to 4 decimals and F to 2, as in the published tables."""
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for r in rows:
        w.writerow([
            r.name, r.award_year if r.award_year is not None else "", r.h if r.h is not None else "",
            r.min_inlinks if r.min_inlinks is not None else "",
            r.max_inlinks if r.max_inlinks is not None else "",
            r.total_range if r.total_range is not None else "",
            r.total_inlinks if r.total_inlinks is not None else "",
            _fmt(r.r_squared, 4), _fmt(r.f_stat, 2), r.significance or "",
            _fmt(r.uncited_fraction, 4), r.error or "",
        ])
    return buf.getvalue()


def _json_safe(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def machine_report(rows: Sequence[ReportRow], bins: int) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "bins": bins,
        "researchers": [{k: _json_safe(v) for k, v in asdict(r).items()} for r in rows],
    }


def dump_machine_report(rows: Sequence[ReportRow], bins: int) -> str:
    return json.dumps(machine_report(rows, bins), indent=2) + "\n"


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_histogram(path: Path, hist: BinnedHistogram) -> None:
    # repr keeps full float precision so re-fitting the file reproduces the report
    _write_rows(
        path,
        HISTOGRAM_COLUMNS,
        (
            (j, repr(float(m)), int(c), repr(float(np.log1p(c))))
            for j, (m, c) in enumerate(zip(hist.midpoints, hist.counts))
        ),
    )


def write_fit_line(path: Path, fit: LinearFitResult, y: np.ndarray) -> None:
    ends = (float(y[0]), float(y[-1]))
    _write_rows(path, FIT_LINE_COLUMNS, ((repr(v), repr(fit.intercept + fit.slope * v)) for v in ends))


def write_size_frequencies(path: Path, freq: dict[int, int]) -> None:
    _write_rows(path, SIZE_FREQ_COLUMNS, sorted(freq.items()))


def write_limit_line(path: Path, points: Iterable[tuple[int, float]]) -> None:
    _write_rows(path, ("size", "probability"), ((s, repr(p)) for s, p in points))


def safe_stem(name: str) -> str:
    keep = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name)
    return keep or "profile"
