"""Command-line front end: ``artin-ap {density,series,census,shift}``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from .census import (
    CSV_HEADER,
    CensusConfig,
    CensusResult,
    cache_path,
    error_diagnostic,
    li,
    read_census_csv,
    run_census,
    squarefree_shift_count,
    write_census_csv,
)
from .density import DEFAULT_ARTIN_BOUND, delta, delta_natural
from .errors import ArtinError, DegenerateH
from .lenstra import delta_series
from .shift import ShiftContext, residue_sum, shift_leading_constant

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3
CACHE_ENV = "ARTIN_CACHE_DIR"


class CacheError(OSError):
    pass


@dataclass
class ReportRecord:
    kind: str
    inputs: dict[str, Any]
    q: Optional[str] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    observed: Optional[int] = None
    predicted: Optional[float] = None
    normalized_error: Optional[float] = None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("lo", "hi", "predicted", "normalized_error"):
            v = getattr(self, name)
            if v is not None and not math.isfinite(v):
                raise ValueError(f"{name} is not finite")
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError("interval with lo > hi")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ReportRecord":
        return cls(**d)


def emit_json(records: Sequence[ReportRecord]) -> str:
    return json.dumps({"records": [r.to_dict() for r in records]}, sort_keys=True)


def parse_json(text: str) -> list[ReportRecord]:
    return [ReportRecord.from_dict(d) for d in json.loads(text)["records"]]


def _fmt(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    return str(v)


def format_table(records: Sequence[ReportRecord]) -> str:
    lines = []
    for r in records:
        lines.append(f"[{r.kind}] {_fmt(r.inputs)}")
        for name in ("q", "lo", "hi", "observed", "predicted", "normalized_error"):
            v = getattr(r, name)
            if v is not None:
                lines.append(f"  {name:<17}{_fmt(v)}")
        for k, v in r.extra.items():
            lines.append(f"  {k:<17}{_fmt(v)}")
    return "\n".join(lines)


def _q_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# --- commands --------------------------------------------------------------


def cmd_density(g: int, m: int, a: int, precision: int = DEFAULT_ARTIN_BOUND) -> ReportRecord:
    d = delta(a, m, g)
    lo, hi = d.enclose(precision).as_floats()
    try:
        nat: Optional[str] = _q_str(delta_natural(a, m, g))
    except DegenerateH:
        nat = None
    return ReportRecord(
        kind="density",
        inputs={"g": g, "m": m, "a": a, "artin_bound": precision},
        q=_q_str(d.q),
        lo=lo,
        hi=hi,
        extra={"delta_natural": nat},
    )


def cmd_series(g: int, m: int, a: int, max_k: int, precision: int = DEFAULT_ARTIN_BOUND) -> ReportRecord:
    closed = delta(a, m, g)
    closed_iv = closed.enclose(precision)
    series = delta_series(a, m, g, max_k)
    lo, hi = series.as_floats()
    c_lo, c_hi = closed_iv.as_floats()
    return ReportRecord(
        kind="series",
        inputs={"g": g, "m": m, "a": a, "max_k": max_k},
        q=_q_str(closed.q),
        lo=lo,
        hi=hi,
        predicted=float(closed_iv.mid),
        extra={"closed_lo": c_lo, "closed_hi": c_hi, "overlap": series.overlaps(closed_iv)},
    )


def load_or_run_census(cfg: CensusConfig, cache_dir: Optional[Path]) -> tuple[CensusResult, bool]:
    """Census result and whether it came from the cache."""
    if cache_dir is None:
        return run_census(cfg), False
    path = cache_path(cache_dir, cfg.g, cfg.x_limit, cfg.m)
    if path.exists():
        try:
            return read_census_csv(path), True
        except (OSError, ValueError, KeyError) as exc:
            raise CacheError(f"unreadable cache file {path}: {exc}") from exc
    result = run_census(cfg)
    try:
        write_census_csv(result, path)
    except OSError as exc:
        raise CacheError(f"cannot write cache file {path}: {exc}") from exc
    return result, False


def cmd_census(
    g: int, x: int, m: int, threads: int = 1, cache_dir: Optional[Path] = None
) -> tuple[list[ReportRecord], CensusResult]:
    cfg = CensusConfig(g=g, x_limit=x, m=m, thread_count=threads)
    result, _ = load_or_run_census(cfg, cache_dir)
    xl = x / math.log(x)
    records = []
    for a in sorted(result.counts):
        inputs = {"g": g, "x": x, "m": m, "a": a}
        if math.gcd(a, m) != 1:
            records.append(ReportRecord("census_class", inputs, observed=result.counts[a]))
            continue
        d = delta(a or m, m, g)
        lo, hi = d.enclose().as_floats()
        records.append(
            ReportRecord(
                "census_class",
                inputs,
                q=_q_str(d.q),
                lo=lo,
                hi=hi,
                observed=result.counts[a],
                predicted=float(d.enclose().mid) * xl,
                normalized_error=error_diagnostic(x, m, a, g, result),
            )
        )
    total = delta(1, 1, g)
    records.append(
        ReportRecord(
            "census_total",
            {"g": g, "x": x, "m": m},
            q=_q_str(total.q),
            observed=result.total_primroot,
            predicted=float(total.enclose().mid) * xl,
            extra={"primes": result.total_primes},
        )
    )
    return records, result


def cmd_shift(g: int, a: int, b: int, prime_bound: int, x: Optional[int] = None) -> ReportRecord:
    ctx = ShiftContext.make(g, a, b)
    const = shift_leading_constant(ctx, prime_bound)
    lo, hi = const.as_floats()
    mid = float(const.mid)
    rec = ReportRecord(
        kind="shift",
        inputs={"g": g, "a": a, "b": b, "prime_bound": prime_bound, "x": x},
        q=_q_str(residue_sum(ctx).q),
        lo=lo,
        hi=hi,
    )
    if x is not None:
        observed = squarefree_shift_count(x, a, b, g)
        rec.observed = observed
        rec.predicted = mid * x / math.log(x)
        if rec.predicted > 0:
            rec.normalized_error = observed / rec.predicted - 1
            rec.extra["li_ratio"] = observed / (mid * li(x))
    return rec


# --- argument parsing ------------------------------------------------------


def parse_int(text: str) -> int:
    """Integers, also in scientific form such as ``1e7``."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not value.is_finite() or value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "artin_ap"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artin-ap",
        description="Densities of primes with a prescribed primitive root in progressions.",
    )
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit a single JSON document")
    fmt.add_argument("--csv", action="store_true", help="emit census rows as CSV")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_m: bool = True) -> None:
        p.add_argument("--g", type=parse_int, required=True)
        if with_m:
            p.add_argument("--m", type=parse_int, default=1)

    p = sub.add_parser("density", help="closed-form density delta(a, m, g)")
    common(p)
    p.add_argument("--a", type=parse_int, default=1)
    p.add_argument(
        "--precision",
        type=parse_int,
        default=DEFAULT_ARTIN_BOUND,
        help="prime bound for the Artin constant enclosure (default 1e8, width < 1e-9)",
    )

    p = sub.add_parser("series", help="compare the closed form with the truncated series")
    common(p)
    p.add_argument("--a", type=parse_int, default=1)
    p.add_argument("--max-k", type=parse_int, default=10**5)

    p = sub.add_parser("census", help="count primes with primitive root g by residue class")
    common(p)
    p.add_argument("--x", type=parse_int, required=True)
    p.add_argument("--threads", type=parse_int, default=1)
    p.add_argument(
        "--cache",
        nargs="?",
        const="",
        default=None,
        metavar="DIR",
        help=f"use the CSV cache (default dir: ${CACHE_ENV} or ~/.cache/artin_ap)",
    )

    p = sub.add_parser("shift", help="leading constant for primes with a*p+b squarefree")
    common(p, with_m=False)
    p.add_argument("--a", type=parse_int, default=1)
    p.add_argument("--b", type=parse_int, required=True)
    p.add_argument("--prime-bound", type=parse_int, default=10**5)
    p.add_argument("--x", type=parse_int, default=None)
    return parser


def _census_csv(result: CensusResult) -> str:
    rows = [CSV_HEADER]
    for a in sorted(result.counts):
        rows.append([result.g, result.x_limit, result.m, a, result.counts[a]])
    rows.append([result.g, result.x_limit, result.m, "_total", result.total_primroot])
    return "\n".join(",".join(str(c) for c in row) for row in rows)


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Execute a command line; returns (exit code, text for stdout)."""
    args = build_parser().parse_args(argv)
    result: Optional[CensusResult] = None
    if args.command == "density":
        records = [cmd_density(args.g, args.m, args.a, args.precision)]
    elif args.command == "series":
        records = [cmd_series(args.g, args.m, args.a, args.max_k)]
    elif args.command == "census":
        cache = None
        if args.cache is not None:
            cache = Path(args.cache) if args.cache else default_cache_dir()
        records, result = cmd_census(args.g, args.x, args.m, args.threads, cache)
    else:
        records = [cmd_shift(args.g, args.a, args.b, args.prime_bound, args.x)]

    if args.json:
        return EXIT_OK, emit_json(records)
    if args.csv:
        if result is None:
            raise ArtinError("--csv is only available for the census command")
        return EXIT_OK, _census_csv(result)
    return EXIT_OK, format_table(records)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code, text = run(argv)
    except ValueError as exc:  # ArtinError and other invalid input
        print(f"artin-ap: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"artin-ap: io error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
