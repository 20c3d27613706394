"""Command line, run records and tabular export.

Every subcommand appends one ``RunRecord`` to a JSON-lines store (path from
``AN_CENSUS_STORE``, default ``an_census_runs.jsonl`` in the working
directory) and prints a summary table.  ``--out`` additionally writes this
run's rows as CSV or JSON.

The run id hashes the subcommand, the result-affecting configuration and the
package version.  Timestamps and execution-only settings (``--partitions``,
``--workers``, ``--out``, ``--format``) stay out of it, so a re-run, or the
same census split differently, lands on the same id.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .census import (cyclic_cubic_oracle, fit_exponent, geometric_grid, run_census,
                     stabilized_constant)
from .disc_fiber import (FiberBase, RootConfig, classify_fiber, critical_values,
                         fiber_disc_poly, verify_cv_factorization)
from .errors import DomainError, NumericFailure, PreconditionError
from .core_poly import to_str
from .pila_audit import count_fiber_points, fiber_exponent_scan, theorem_exponents
from .reducible_locus import reducible_growth_exponent, scan_reducible_fibers

SCHEMA_VERSION = 1
STORE_ENV = "AN_CENSUS_STORE"
DEFAULT_STORE = "an_census_runs.jsonl"

# Export column order.  Blank cells mean "not produced by this subcommand".
COLUMNS = ("run_id", "subcommand", "n", "X", "H", "c", "points_on_R", "an_polys", "fields",
           "unknown_verdicts", "disc_zero", "count", "ok", "slope", "log10_pila",
           "theorem_exp", "schmidt_exp", "improvement")

EXECUTION_ONLY = frozenset({"partitions", "workers", "out", "format"})


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Six significant digits for floats; everything else verbatim."""
    if isinstance(x, float):
        return f"{x:.6g}"
    if x is None:
        return ""
    return str(x)


# --- records and store --------------------------------------------------------

@dataclass
class CliConfig:
    subcommand: str
    params: dict

    def __post_init__(self):
        for k, v in self.params.items():
            if k in ("coeffs", "points", "include_singular", "out", "format", "seed"):
                continue
            vals = v if isinstance(v, list) else [v]
            for x in vals:
                if isinstance(x, bool):
                    continue
                if isinstance(x, (int, float)) and not x > 0:
                    raise DomainError(f"--{k.replace('_', '-')} must be positive")
                if isinstance(x, str) and k in ("box_constant", "box_sweep") and not Fraction(x) > 0:
                    raise DomainError(f"--{k.replace('_', '-')} must be positive")
        if self.params.get("format") not in (None, "json", "csv"):
            raise DomainError("format must be json or csv")

    def identity(self) -> dict:
        return {k: v for k, v in sorted(self.params.items()) if k not in EXECUTION_ONLY}


def make_run_id(config: CliConfig, version: str = __version__) -> str:
    blob = json.dumps({"subcommand": config.subcommand, "config": config.identity(),
                       "version": version}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


@dataclass
class RunRecord:
    run_id: str
    subcommand: str
    config: dict
    started: str
    finished: str
    payload: dict
    diagnostics: dict = field(default_factory=dict)
    version: str = __version__
    schema: int = SCHEMA_VERSION

    def rows(self) -> list[dict]:
        return [dict(run_id=self.run_id, subcommand=self.subcommand, **r)
                for r in self.payload.get("rows", [])]


def store_path() -> str:
    return os.environ.get(STORE_ENV) or DEFAULT_STORE


def store_append(record: RunRecord, path: Optional[str] = None) -> None:
    path = path or store_path()
    line = json.dumps(asdict(record), sort_keys=True, ensure_ascii=False)
    with open(path, "a", encoding="utf-8", newline="\n") as fh:
        fh.write(line + "\n")


def store_load(path: Optional[str] = None) -> list[RunRecord]:
    path = path or store_path()
    if not os.path.exists(path):
        return []
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(RunRecord(**json.loads(line)))
    return out


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([fmt(r.get(c)) for c in COLUMNS])
    return buf.getvalue()


def export_csv(path: Optional[str] = None) -> str:
    """The whole store as CSV text, one row per payload row, in store order."""
    rows = [r for rec in store_load(path) for r in rec.rows()]
    return rows_to_csv(rows)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --- subcommands ----------------------------------------------------------------

def _parse_ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {s!r}")


def _parse_fracs(s: str) -> list[str]:
    try:
        return [str(Fraction(x.strip())) for x in s.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated numbers, got {s!r}")


def _base(n: int, coeffs: str) -> FiberBase:
    return FiberBase(n, tuple(_parse_ints(coeffs)))


def _cmd_census(p: dict) -> tuple[dict, dict]:
    grid = geometric_grid(p["xmax"], p["grid_ratio"], p.get("xmin", 1))
    sweep = p.get("box_sweep") or [p["box_constant"]]
    summaries = {}
    for c in sweep:
        summaries[Fraction(c)] = run_census(p["n"], grid, Fraction(c), p["primes"],
                                            p["fingerprint_primes"], p["partitions"], p["workers"])
    rows = []
    for c, s in summaries.items():
        for cp in s.checkpoints:
            rows.append(dict(n=p["n"], X=cp.X, c=str(c), points_on_R=cp.points_on_R,
                             an_polys=cp.an_polys, fields=cp.fields,
                             unknown_verdicts=cp.unknown_verdicts, disc_zero=s.disc_zero))
    payload = {"rows": rows, "field_mode": next(iter(summaries.values())).field_mode}
    if len(summaries) > 1:
        st = stabilized_constant(summaries)
        payload["stabilized_c"] = None if st is None else str(st)
    diag = {"disc_zero": sum(s.disc_zero for s in summaries.values()),
            "unknown_verdicts": sum(s.checkpoints[-1].unknown_verdicts for s in summaries.values()),
            "unresolved_fields": sum(s.unresolved_fields for s in summaries.values())}
    return payload, diag


def _cmd_fiber(p: dict) -> tuple[dict, dict]:
    base = _base(p["n"], p["coeffs"])
    curve = classify_fiber(base)
    c = Fraction(p["box_constant"])
    count = count_fiber_points(base, p["xmax"], c, p["include_singular"])
    payload = {"poly": to_str(curve.p, "y"), "irreducible": curve.geometrically_irreducible,
               "rows": [dict(n=p["n"], X=p["xmax"], c=str(c), count=count,
                             ok=curve.geometrically_irreducible)]}
    return payload, {}


def _cmd_reducible(p: dict) -> tuple[dict, dict]:
    hs = sorted(set(p["height"]))
    n = p["n"]
    payload: dict = {}
    if n % 2 == 1 and len(hs) >= 3:
        fit = reducible_growth_exponent(n, hs)
        counts, slope = fit.counts, fit.slope
        payload["bound"] = fit.bound
        payload["within_bound"] = fit.within_bound
        report = None
    else:
        report = scan_reducible_fibers(n, hs[-1])
        counts, slope = tuple(report.count_within(h) for h in hs), None
        payload["degrees"] = sorted(report.degrees)
    payload["rows"] = [dict(n=n, H=h, count=k) for h, k in zip(hs, counts)]
    if slope is not None:
        payload["rows"][-1]["slope"] = slope
    if report is not None:
        payload["hits"] = [list(b.coeffs) for b, _ in report.hits][:100]
    return payload, {}


def _cmd_pila(p: dict) -> tuple[dict, dict]:
    n = p["n"]
    ex = theorem_exponents(n)
    row = dict(n=n, theorem_exp=str(ex.theorem_exp), schmidt_exp=str(ex.schmidt_exp),
               improvement=str(ex.improvement))
    if not p.get("coeffs"):
        return {"rows": [row]}, {}
    base = _base(n, p["coeffs"])
    grid = geometric_grid(p["xmax"], p["grid_ratio"], p.get("xmin", 100))
    scan = fiber_exponent_scan(base, grid, Fraction(p["box_constant"]))
    rows = [dict(n=n, X=X, c=p["box_constant"], count=k, log10_pila=lb)
            for X, k, lb in zip(scan.xs, scan.counts, scan.log10_bounds)]
    row.update(slope=scan.slope, ok=scan.within_pila)
    rows.append(row)
    return {"rows": rows, "within_pila": scan.within_pila}, {}


def _cmd_oracle(p: dict) -> tuple[dict, dict]:
    grid = geometric_grid(p["xmax"], p["grid_ratio"], p["xmax"]) if p.get("grid") else [p["xmax"]]
    rows = [dict(n=3, X=X, fields=cyclic_cubic_oracle(X)) for X in grid]
    return {"rows": rows}, {}


def _cmd_critical(p: dict) -> tuple[dict, dict]:
    base = _base(p["n"], p["coeffs"])
    cfg = RootConfig(seed=p["seed"])
    cvs = critical_values(base, cfg)
    ok = verify_cv_factorization(base, p["tolerance"], cfg)
    values = [[float(v.real), float(v.imag)] for v in cvs.values]
    return {"poly": to_str(fiber_disc_poly(base), "y"), "critical_values": values,
            "rows": [dict(n=p["n"], count=len(values), ok=ok)]}, {}


def _cmd_fit(p: dict) -> tuple[dict, dict]:
    pts = p.get("points") or []
    slope = fit_exponent(pts)
    return {"rows": [dict(count=len(pts), slope=slope)]}, {}


COMMANDS = {"census": _cmd_census, "fiber": _cmd_fiber, "reducible": _cmd_reducible,
            "pila": _cmd_pila, "oracle-cubic": _cmd_oracle, "critical": _cmd_critical,
            "fit": _cmd_fit}


# --- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _positive_int(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(s: str) -> float:
    v = float(s)
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def _positive_frac(s: str) -> str:
    try:
        v = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("must be a positive number")
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive number")
    return str(v)


def _xmax(s: str) -> int:
    # accepts 1e6 style input but keeps X an exact integer
    v = float(s) if any(ch in s for ch in "eE.") else int(s)
    if v != int(v) or v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return int(v)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="an_census", description="A_n census and fiber diagnostics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    def common(sp, n_default=None):
        sp.add_argument("--n", type=_positive_int, default=n_default, required=n_default is None)
        sp.add_argument("--out")
        sp.add_argument("--format", choices=("json", "csv"), default="csv")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("census", help="enumerate A_n fields up to X")
    common(sp)
    sp.add_argument("--xmax", type=_xmax, required=True)
    sp.add_argument("--xmin", type=_xmax, default=1)
    sp.add_argument("--grid-ratio", type=_positive_float, default=math.sqrt(10))
    sp.add_argument("--box-constant", type=_positive_frac, default="4")
    sp.add_argument("--box-sweep", type=_parse_fracs)
    sp.add_argument("--primes", type=_positive_int, default=100, help="prime budget for certification")
    sp.add_argument("--fingerprint-primes", type=_positive_int, default=25)
    sp.add_argument("--partitions", type=_positive_int, default=1)
    sp.add_argument("--workers", type=_positive_int, default=1)

    sp = sub.add_parser("fiber", help="square points on one fiber")
    common(sp)
    sp.add_argument("--coeffs", required=True, help="a_2,...,a_{n-1} (use --coeffs=-3 for negatives)")
    sp.add_argument("--xmax", type=_xmax, required=True)
    sp.add_argument("--box-constant", type=_positive_frac, default="1")
    sp.add_argument("--include-singular", action="store_true")

    sp = sub.add_parser("reducible", help="geometrically reducible fibers in a height box")
    common(sp)
    sp.add_argument("--height", type=_parse_ints, required=True, help="comma-separated H values")

    sp = sub.add_parser("pila", help="exponents, and a fiber count against the Pila bound")
    common(sp)
    sp.add_argument("--coeffs")
    sp.add_argument("--xmax", type=_xmax, default=10 ** 6)
    sp.add_argument("--xmin", type=_xmax, default=100)
    sp.add_argument("--grid-ratio", type=_positive_float, default=10.0)
    sp.add_argument("--box-constant", type=_positive_frac, default="1")

    sp = sub.add_parser("oracle-cubic", help="cyclic cubic fields with discriminant at most X")
    common(sp, n_default=3)
    sp.add_argument("--xmax", type=_xmax, required=True)
    sp.add_argument("--grid", action="store_true", help="report a geometric grid up to xmax")
    sp.add_argument("--grid-ratio", type=_positive_float, default=math.sqrt(10))

    sp = sub.add_parser("critical", help="critical values and the fiber factorization check")
    common(sp)
    sp.add_argument("--coeffs", required=True)
    sp.add_argument("--tolerance", type=_positive_float, default=1e-6)

    sp = sub.add_parser("fit", help="log-log slope of (X, N) points")
    sp.add_argument("--point", dest="points", nargs=2, type=float, action="append",
                    metavar=("X", "N"))
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    return parser


def _print_table(rows: Sequence[dict], out) -> None:
    cols = [c for c in COLUMNS[2:] if any(r.get(c) is not None for r in rows)]
    if not cols:
        return
    cells = [[fmt(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    print("  ".join(c.rjust(w) for c, w in zip(cols, widths)), file=out)
    for row in cells:
        print("  ".join(v.rjust(w) for v, w in zip(row, widths)), file=out)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def run_cli(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Parse, run, record and print.  Returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        if args.subcommand is None:
            raise UsageError(parser.format_usage().rstrip())
        params = {k: v for k, v in vars(args).items() if k != "subcommand"}
        config = CliConfig(args.subcommand, params)
        started = _now()
        payload, diag = COMMANDS[args.subcommand](params)
        record = RunRecord(make_run_id(config), args.subcommand, params, started, _now(),
                           payload, diag)
        if args.out:
            if args.format == "csv":
                _write_text(args.out, rows_to_csv(record.rows()))
            else:
                blob = {"run_id": record.run_id, "subcommand": record.subcommand,
                        "payload": payload}
                _write_text(args.out, json.dumps(blob, sort_keys=True, indent=1) + "\n")
        store_append(record)
    except UsageError as e:
        print(str(e), file=stderr)
        return 1
    except SystemExit as e:  # --help / --version
        return 0 if not e.code else 1
    except (DomainError, PreconditionError) as e:
        print(f"error: {e}", file=stderr)
        return 1
    except NumericFailure as e:
        print(f"numeric failure: {e}", file=stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return 1
    if args.subcommand == "oracle-cubic" and len(payload["rows"]) == 1:
        print(payload["rows"][0]["fields"], file=stdout)
    else:
        _print_table(payload["rows"], stdout)
    if "stabilized_c" in payload:
        print(f"stabilized_c {payload['stabilized_c']}", file=stdout)
    print(f"run_id {record.run_id}", file=stdout)
    return 0


def main() -> None:  # pragma: no cover
    sys.exit(run_cli())
