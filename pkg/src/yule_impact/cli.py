"""Command-line front end: ``yule-impact {analyze,simulate,fit}``.

Options may also come from a JSON file given with ``--config``; flags on the
command line win over the file.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

from .corpus import CitationSchema, CorpusError, ResearcherProfile, read_profile
from .impact import AnalysisError, LinearFitResult, ols_fit
from .report import (
    HISTOGRAM_COLUMNS,
    ProfileAnalysis,
    ReportRow,
    analyze_profile,
    dump_machine_report,
    format_table,
    safe_stem,
    write_fit_line,
    write_histogram,
    write_limit_line,
    write_size_frequencies,
)
from .simulate import ConfigError, SimonProcessConfig, run_simon, simulate_genera
from .special import yule_limit_pmf

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_FAILED = 2


class InputParseError(ValueError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}: line {line}: {message}")
        self.line = line


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    profiles: list = field(default_factory=list)  # [{"path", "name", "award_year"}] from a config file
    bins: int = 25
    transform: str = "log1p"
    model: Optional[str] = None
    alpha: Optional[float] = None
    epochs: int = 100_000
    initial: int = 1
    genera: int = 1000
    snapshots: list = field(default_factory=lambda: [1.0, 3.0, 6.28])
    arrival: str = "stream"
    rho: float = 0.5
    seed: int = 0
    out: str = "out"
    format: str = "table"
    delimiter: str = "comma"
    cites_column: str = "Cites"
    jobs: int = 1

    def __post_init__(self):
        if self.bins < 2:
            raise ConfigError(f"--bins must be >= 2, got {self.bins}")
        if self.format not in ("table", "machine"):
            raise ConfigError(f"--format must be 'table' or 'machine', got {self.format!r}")


def build_parser() -> argparse.ArgumentParser:
    # every default is None so that config-file values can fill the gaps
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values; command-line flags take precedence")
    common.add_argument("--out", help="output directory (default: out)")
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("table", "machine"))

    p = argparse.ArgumentParser(prog="yule-impact", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="h-truncated log-log fit for citation profiles")
    a.add_argument("--input", dest="inputs", nargs="+", metavar="PATH")
    a.add_argument("--bins", type=int)
    a.add_argument("--delimiter", choices=("comma", "tab"))
    a.add_argument("--cites-column")
    a.add_argument("--transform", choices=("log1p", "log_zero_plus_one"))
    a.add_argument("--jobs", type=int)

    s = sub.add_parser("simulate", parents=[common], help="run Simon's urn or Yule's genus model")
    s.add_argument("--model", choices=("simon", "genera"))
    s.add_argument("--alpha", type=float)
    s.add_argument("--epochs", type=int)
    s.add_argument("--initial", type=int, help="initial unit-size elements for the urn")
    s.add_argument("--genera", type=int)
    s.add_argument("--snapshots", type=float, nargs="+")
    s.add_argument("--arrival", choices=("cohort", "stream"))
    s.add_argument("--rho", type=float, help="genus-to-species growth rate ratio for stream arrival")

    f = sub.add_parser("fit", parents=[common], help="least-squares fit and F test of an emitted data file")
    f.add_argument("--input", dest="inputs", nargs=1, metavar="PATH")
    return p


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    values = {}
    if ns.config:
        with open(ns.config, encoding="utf-8") as fh:
            values.update(json.load(fh))
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key, value in vars(ns).items():
        if key in known and value is not None:
            values[key] = value
    values["command"] = ns.command
    return RunConfig(**values)


def _profiles(cfg: RunConfig) -> list[dict]:
    entries = [dict(p) for p in cfg.profiles]
    entries += [{"path": path} for path in cfg.inputs]
    return entries


def _load_and_analyze(entry: dict, cfg: RunConfig) -> ProfileAnalysis:
    path = Path(entry["path"])
    name = entry.get("name") or path.stem
    schema = CitationSchema(cites=cfg.cites_column, delimiter=cfg.delimiter)
    try:
        profile = read_profile(path, schema, name=name, award_year=entry.get("award_year"))
    except (CorpusError, OSError, UnicodeDecodeError) as exc:
        return ProfileAnalysis(row=ReportRow(name=name, award_year=entry.get("award_year"),
                                             error=f"{type(exc).__name__}: {exc}"))
    return analyze_profile(profile, k=cfg.bins, transform=cfg.transform)


def cmd_analyze(cfg: RunConfig) -> tuple[list[ReportRow], int]:
    entries = _profiles(cfg)
    if not entries:
        raise ConfigError("analyze needs at least one --input")
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)

    with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as pool:
        results = list(pool.map(lambda e: _load_and_analyze(e, cfg), entries))

    used: set[str] = set()
    for res in results:
        if not res.row.ok:
            continue
        stem = safe_stem(res.row.name)
        base, n = stem, 1
        while stem in used:
            n += 1
            stem = f"{base}_{n}"
        used.add(stem)
        write_histogram(out / f"{stem}.histogram.csv", res.hist)
        write_fit_line(out / f"{stem}.fitline.csv", res.fit, res.y)

    rows = [r.row for r in results]
    if cfg.format == "machine":
        (out / "report.json").write_text(dump_machine_report(rows, cfg.bins), encoding="utf-8")
    else:
        (out / "report.tsv").write_text(format_table(rows), encoding="utf-8")
    n_ok = sum(r.ok for r in rows)
    code = EXIT_OK if n_ok == len(rows) else EXIT_PARTIAL if n_ok else EXIT_FAILED
    return rows, code


def cmd_simulate(cfg: RunConfig) -> list[Path]:
    model = cfg.model or ("simon" if cfg.alpha is not None else "genera")
    out = Path(cfg.out)
    written = []
    if model == "simon":
        if cfg.alpha is None:
            raise ConfigError("the simon model needs --alpha")
        sim = SimonProcessConfig(alpha=cfg.alpha, epochs=cfg.epochs, initial_elements=cfg.initial, seed=cfg.seed)
        pop = run_simon(sim)
        freq = pop.size_frequencies()
        out.mkdir(parents=True, exist_ok=True)
        path = out / "simon_sizes.csv"
        write_size_frequencies(path, freq)
        written.append(path)
        if math.isinf(sim.rho):
            limit = [(1, 1.0)]
        else:
            limit = [(s, yule_limit_pmf(sim.rho, s)) for s in range(1, max(freq) + 1)]
    else:
        if not cfg.snapshots:
            raise ConfigError("the genera model needs at least one snapshot")
        snaps = sorted(cfg.snapshots)
        hists = simulate_genera(cfg.arrival, cfg.genera, snaps[-1], snaps, seed=cfg.seed, rho=cfg.rho)
        out.mkdir(parents=True, exist_ok=True)
        for h in hists:
            path = out / f"genera_t{h.t:g}.csv"
            write_size_frequencies(path, h.counts)
            written.append(path)
        top = max(max(h.counts) for h in hists)
        limit = [(s, yule_limit_pmf(cfg.rho, s)) for s in range(1, top + 1)]
    path = out / "limit.csv"
    write_limit_line(path, limit)
    written.append(path)
    return written


def read_xy(path: Path) -> tuple[list[float], list[float]]:
    """Load fit coordinates from an emitted file.

    Histogram files give x = ln_count_plus_1, y = midpoint_log; size-frequency
    files give x = ln(count), y = ln(size) over nonzero counts; any other
    two-column file is read as x, y in column order.
    """
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise InputParseError(path, 1, "file is empty") from None
        if set(HISTOGRAM_COLUMNS) <= set(header):
            xi, yi, kind = header.index("ln_count_plus_1"), header.index("midpoint_log"), "plain"
        elif header[:2] == ["size", "count"]:
            xi, yi, kind = 1, 0, "loglog"
        elif len(header) >= 2:
            xi, yi, kind = 0, 1, "plain"
        else:
            raise InputParseError(path, 1, f"need at least two columns, header is {header}")
        xs, ys = [], []
        for row in reader:
            if not row:
                continue
            line = reader.line_num
            try:
                xv, yv = float(row[xi]), float(row[yi])
            except (ValueError, IndexError):
                raise InputParseError(path, line, f"cannot read numeric columns from {row}") from None
            if not (math.isfinite(xv) and math.isfinite(yv)):
                raise InputParseError(path, line, f"non-finite value in {row}")
            if kind == "loglog":
                if xv <= 0:
                    continue
                if yv <= 0:
                    raise InputParseError(path, line, f"size must be positive, got {row[yi]}")
                xv, yv = math.log(xv), math.log(yv)
            xs.append(xv)
            ys.append(yv)
    return xs, ys


def cmd_fit(cfg: RunConfig) -> LinearFitResult:
    if len(cfg.inputs) != 1:
        raise ConfigError("fit needs exactly one --input")
    path = Path(cfg.inputs[0])
    x, y = read_xy(path)
    fit = ols_fit(x, y)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    order = sorted(y)
    write_fit_line(out / f"{safe_stem(path.stem)}.fit.csv", fit, [order[0], order[-1]])
    return fit


def format_fit(fit: LinearFitResult) -> str:
    f = "inf" if math.isinf(fit.f_stat) else f"{fit.f_stat:.2f}"
    return (
        f"slope\t{fit.slope:.6g}\n"
        f"intercept\t{fit.intercept:.6g}\n"
        f"r_squared\t{fit.r_squared:.4f}\n"
        f"f_stat\t{f}\n"
        f"df\t{fit.df}\n"
        f"p_value\t{fit.p_value:.4g}\n"
        f"significance\t{fit.significance.value}\n"
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(ns)
        if cfg.command == "analyze":
            rows, code = cmd_analyze(cfg)
            if cfg.format == "machine":
                sys.stdout.write(dump_machine_report(rows, cfg.bins))
            else:
                sys.stdout.write(format_table(rows))
            for r in rows:
                if not r.ok:
                    print(f"error: {r.name}: {r.error}", file=sys.stderr)
            return code
        if cfg.command == "simulate":
            for path in cmd_simulate(cfg):
                print(path)
            return EXIT_OK
        fit = cmd_fit(cfg)
        if cfg.format == "machine":
            sys.stdout.write(json.dumps({
                "slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared,
                "f_stat": "inf" if math.isinf(fit.f_stat) else fit.f_stat, "df": fit.df,
                "p_value": fit.p_value, "significance": fit.significance.value,
            }, indent=2) + "\n")
        else:
            sys.stdout.write(format_fit(fit))
        return EXIT_OK
    except (ConfigError, AnalysisError, InputParseError, CorpusError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
