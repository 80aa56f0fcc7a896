"""Command-line surface: exact values, traces, verifications, tables.

    sptkit value {p|spt|traceS_exact} N
    sptkit trace N [--tolerance T] [--prec BITS]
    sptkit verify {1..6|all} [--format {json,text}]
    sptkit table {bounds,thresholds,Ca} [RANGE]

Exit codes: 0 success / all pass, 1 verification failure, 2 usage or
domain error, 3 precision failure.  Identical invocations print byte-
identical output: JSON keys are sorted, numbers use fixed formats, and
row order is deterministic (host-dependent runtimes are therefore kept
out of the serialized reports).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from mpmath import mp

from .apfloat import PrecisionError
from . import bounds, qseries, trace, verify

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int | None = None  # None: per-task default policy
    tolerance: float = 1e-6
    threads: int = 0  # 0: all cores
    output_format: str = "json"

    def __post_init__(self):
        if self.precision_bits is not None and self.precision_bits < 64:
            raise UsageError("--prec must be at least 64 bits")
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        if self.threads < 0:
            raise UsageError("--threads must be >= 0")
        if self.output_format not in ("json", "csv", "text"):
            raise UsageError("--format must be one of json, csv, text")

    @property
    def worker_count(self) -> int:
        return self.threads or os.cpu_count() or 1


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_value(kind: str, n: int, config: RunConfig) -> int:
    if kind == "p":
        print(qseries.partition_p(n))
    elif kind == "spt":
        print(qseries.spt(n))
    elif kind == "traceS_exact":
        print(trace.trace_S_exact(n))
    else:
        raise UsageError(f"unknown value kind {kind!r}")
    return EXIT_OK


def cmd_trace(n: int, config: RunConfig) -> int:
    result = trace.trace_S(n, tolerance=config.tolerance, prec=config.precision_bits)
    payload = {
        "schema": "sptkit/1",
        "n": result.n,
        "value": mp.nstr(result.value.value, 30),
        "rigorous_error": f"{result.value.rigorous_error:.6e}",
        "tail_bound": f"{result.tail_bound:.6e}",
        "exact": str(result.exact),
        "residual": f"{result.residual:.6e}",
        "rounds_to_exact": result.residual < 0.5,
    }
    print(_json_dump(payload))
    return EXIT_OK


def cmd_verify(which: str, config: RunConfig) -> int:
    if which == "all":
        reports = verify.verify_all(threads=config.worker_count)
    else:
        try:
            cid = int(which)
        except ValueError:
            raise UsageError("verify expects a conjecture number 1..6 or 'all'") from None
        if not 1 <= cid <= 6:
            raise UsageError("conjecture number must be in 1..6")
        reports = [verify.verify_conjecture(cid)]
    if config.output_format == "text":
        for r in reports:
            rec = r.analytic_threshold
            extra = (
                f" threshold {rec.verified_threshold} (claimed {rec.claimed_threshold})"
                if rec
                else ""
            )
            print(
                f"conjecture {r.conjecture_id}: {r.status}"
                f" [scan {r.exact_scan_range[0]}..{r.exact_scan_range[1]},"
                f" {len(r.failures)} failures]{extra}"
            )
    else:
        for r in reports:
            print(_json_dump(r.to_json_dict()))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAIL


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected LO..HI") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"bad range {text!r}; need 1 <= LO <= HI")
    return lo, hi


def _fmt(x) -> str:
    return "" if x is None else f"{float(x.value):.6e}"


def cmd_table(kind: str, range_text: str | None, config: RunConfig) -> int:
    rows: list[list[str]]
    if kind == "Ca":
        header = ["a", "C_a"]
        rep = verify.verify_conjecture(2)
        rows = [[a, rep.details["Ca"][a]] for a in sorted(rep.details["Ca"])]
    elif kind == "thresholds":
        header = ["name", "claimed", "verified", "scan_floor", "scan_ceiling"]
        rows = []
        for name in bounds.THRESHOLD_NAMES:
            rec = bounds.threshold_record(name)
            rows.append(
                [
                    rec.predicate_name,
                    str(rec.claimed_threshold),
                    str(rec.verified_threshold),
                    str(rec.scan_floor),
                    str(rec.scan_ceiling),
                ]
            )
    elif kind == "bounds":
        if not range_text:
            raise UsageError("table bounds requires a range LO..HI")
        lo, hi = _parse_range(range_text)
        header = ["n", "lambda", "q", "M", "g", "F_lower", "F_upper", "spt2_lower", "spt2_upper"]
        rows = []
        for n in range(lo, hi + 1):
            prof = bounds.bounds_profile(n, config.precision_bits or 192)
            rows.append(
                [
                    str(n),
                    _fmt(prof.lambda_n),
                    _fmt(prof.q),
                    _fmt(prof.M),
                    _fmt(prof.g),
                    _fmt(prof.F_lower),
                    _fmt(prof.F_upper),
                    _fmt(prof.spt2_lower),
                    _fmt(prof.spt2_upper),
                ]
            )
    else:
        raise UsageError(f"unknown table kind {kind!r}")

    if config.output_format == "json":
        # tables default to CSV; JSON on request
        print(_json_dump({"schema": "sptkit/1", "table": kind, "header": header, "rows": rows}))
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(str(c) for c in row))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=None, metavar="BITS",
                        help="working precision in bits (default: per-task policy)")
    common.add_argument("--tolerance", type=float, default=1e-6, metavar="T",
                        help="rigorous budget for numeric traces (default 1e-6)")
    common.add_argument("--threads", type=int, default=0, metavar="K",
                        help="worker processes for scans (default: all cores)")
    common.add_argument("--format", default=None, choices=["json", "csv", "text"],
                        help="output format (verify: json/text, table: csv/json)")

    parser = argparse.ArgumentParser(
        prog="sptkit",
        description="Exact and rigorously-bounded smallest-parts computations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_value = sub.add_parser("value", parents=[common], help="print one exact integer")
    p_value.add_argument("kind", choices=["p", "spt", "traceS_exact"])
    p_value.add_argument("n", type=int)

    p_trace = sub.add_parser("trace", parents=[common], help="numeric trace S(n) as JSON")
    p_trace.add_argument("n", type=int)

    p_verify = sub.add_parser("verify", parents=[common], help="run conjecture verifications")
    p_verify.add_argument("which", metavar="{1..6|all}")

    p_table = sub.add_parser("table", parents=[common], help="emit a CSV table")
    p_table.add_argument("kind", choices=["bounds", "thresholds", "Ca"])
    p_table.add_argument("range", nargs="?", default=None, metavar="LO..HI")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        default_format = "csv" if args.command == "table" else "json"
        config = RunConfig(
            precision_bits=args.prec,
            tolerance=args.tolerance,
            threads=args.threads,
            output_format=args.format or default_format,
        )
        if args.command == "value":
            return cmd_value(args.kind, args.n, config)
        if args.command == "trace":
            return cmd_trace(args.n, config)
        if args.command == "verify":
            return cmd_verify(args.which, config)
        if args.command == "table":
            return cmd_table(args.kind, args.range, config)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"sptkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError, ZeroDivisionError) as exc:
        print(f"sptkit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (trace.ToleranceError, PrecisionError) as exc:
        print(f"sptkit: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
