"""Command-line interface: ``partstat <verb> [flags]``.

Exit status is 0 on success, 1 on usage errors and 2 when a comparison or
the verification ledger finds a mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import closedforms as cf
from ._backend import BACKEND
from .asymptotics import CSV_COLUMNS, asymptotic_mean, asymptotic_mean_k, convergence_report
from .brute import brute_mean
from .exactnum import bell, stirling2
from .partitions import enumerate_all, enumerate_k, parse_partition
from .sampler import EmpiricalEstimate, SamplerConfig, empirical_mean, sample_stream
from .statistics import CATALOG, InvalidPattern, UnknownStatistic, parse_statistic
from .verify import run_ledger
from .zmean import MeanReport, mean_n_engine, mean_nk_engine, vsequence

TABLE_ENV = "PARTSTAT_TABLE_N"
# largest n the brute-force path will enumerate on its own
BRUTE_LIMIT = 12 if BACKEND == "cython" else 10


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit(rows: list[dict], columns: Sequence[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        w.writerows(rows)
    else:
        cells = [["" if r.get(c) is None else str(r[c]) for c in columns] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
        out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
        for row in cells:
            out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _stat(token: str):
    try:
        return parse_statistic(token)
    except (UnknownStatistic, InvalidPattern, ValueError) as exc:
        msg = str(exc)
        if "known:" not in msg:
            msg += f"\nknown statistics: {', '.join(CATALOG)}"
        raise UsageError(msg) from None


def _check_nk(n: Optional[int], k: Optional[int]) -> None:
    if n is None or n < 0:
        raise UsageError("--n must be a nonnegative integer")
    if k is not None and not 1 <= k <= n:
        raise UsageError("--k must satisfy 1 <= k <= n")


# -- verbs -------------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    _check_nk(args.n, args.k)
    parts = enumerate_all(args.n) if args.k is None else enumerate_k(args.n, args.k)
    rows = [{"rgf": p.rgf_string(), "blocks": p.block_string(), "k": p.k} for p in parts]
    _emit(rows, ("rgf", "blocks", "k"), args.format, out)
    return 0


def cmd_stat(args, out) -> int:
    stat = _stat(args.stat)
    try:
        p = parse_partition(args.partition)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [{"statistic": stat.token, "partition": p.block_string(), "value": stat(p)}]
    _emit(rows, ("statistic", "partition", "value"), args.format, out)
    return 0


def _mean_reports(args) -> tuple[list[MeanReport], Optional[EmpiricalEstimate]]:
    stat = _stat(args.stat)
    n, k = args.n, args.k
    _check_nk(n, k)
    if n == 0 and k is None:
        raise UsageError("means need n >= 1")
    methods = ("closed", "engine", "brute") if args.method == "all" else (args.method,)
    count = bell(n) if k is None else stirling2(n, k)
    reports = []
    estimate = None
    for method in methods:
        if method == "closed":
            if not cf.has_closed_mean(stat):
                if args.method == "closed":
                    raise UsageError(f"no closed-form mean for {stat.token}")
                continue
            try:
                mean = cf.closed_mean(stat, n, k, args.variant)
            except cf.OutOfRange as exc:
                raise UsageError(str(exc)) from None
            label = "closed" if args.variant == "canonical" else f"closed[{args.variant}]"
            reports.append(MeanReport(n, k, mean * count, mean, label))
        elif method == "engine":
            v = vsequence(stat, n)
            rep = mean_n_engine(v, n) if k is None else mean_nk_engine(v, n, k)
            reports.append(rep)
        elif method == "brute":
            if n > BRUTE_LIMIT and args.method == "all":
                continue
            mean = brute_mean(stat, n, k)
            reports.append(MeanReport(n, k, mean * count, mean, "brute"))
        elif method == "sampled":
            estimate = empirical_mean(stat, SamplerConfig(n, k, args.seed, args.trials))
    return reports, estimate


def _approximation(token: str, n: int, k: Optional[int]) -> Optional[float]:
    try:
        return asymptotic_mean(token, n) if k is None else asymptotic_mean_k(token, n, k)
    except (cf.OutOfRange, UnknownStatistic):
        return None


def cmd_mean(args, out) -> int:
    reports, est = _mean_reports(args)
    approx = _approximation(args.stat, args.n, args.k)
    reports = [MeanReport(r.n, r.k, r.total, r.mean, r.method, approx, r.oracle) for r in reports]
    brute = next((r for r in reports if r.method == "brute"), None)
    reference = brute or (reports[-1] if reports else None)
    verdict = "match"
    marked = []
    for r in reports:
        if r is not reference:
            tag = "match" if r.mean == reference.mean else "mismatch"
            if tag == "mismatch":
                verdict = "mismatch"
            r = MeanReport(r.n, r.k, r.total, r.mean, r.method, r.asymptotic, tag)
        marked.append(r)
    if args.format == "json":
        doc = {"statistic": args.stat, "reports": [r.to_json() for r in marked]}
        if est is not None:
            doc["sampled"] = {"n": args.n, "k": args.k, "seed": args.seed, **est.to_json()}
        doc["verdict"] = verdict
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        rows = [{"method": r.method, "mean": _frac(r.mean), "mean_float": f"{r.mean_float:.12g}",
                 "total": r.total, "oracle": r.oracle or ""} for r in marked]
        if est is not None:
            rows.append({"method": "sampled", "mean": "", "mean_float": f"{est.mean:.12g}",
                         "total": "", "oracle": f"stderr={est.stderr:.6g}"})
        _emit(rows, ("method", "mean", "mean_float", "total", "oracle"), args.format, out)
        if args.format == "text":
            out.write(f"verdict  {verdict.upper() if verdict == 'mismatch' else verdict}\n")
    return 2 if verdict == "mismatch" else 0


def cmd_verify(args, out) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    entries = list(run_ledger(args.max_n, args.only))
    failed = [e for e in entries if not e.ok]
    if args.format == "json":
        json.dump({"max_n": args.max_n, "entries": [e.to_json() for e in entries],
                   "failures": len(failed)}, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        _emit([e.to_json() for e in entries], ("check", "ok", "detail"), "csv", out)
    else:
        for e in entries:
            out.write(f"{'PASS' if e.ok else 'FAIL'}  {e.check}  [{e.detail}]\n")
        out.write(f"{len(entries) - len(failed)}/{len(entries)} checks passed\n")
    return 2 if failed else 0


def cmd_asymptotics(args, out) -> int:
    stat = _stat(args.stat)
    try:
        grid = [int(x) for x in args.grid.split(",") if x.strip()]
        reports = convergence_report(stat, grid, args.k)
    except (ValueError, cf.OutOfRange, UnknownStatistic) as exc:
        raise UsageError(str(exc)) from None
    rows = [dict(zip(CSV_COLUMNS, rep.row())) for rep in reports]
    if args.format == "json":
        for row, rep in zip(rows, reports):
            row["exact"] = _frac(rep.exact)
            row["exact_float"] = float(rep.exact)
    _emit(rows, CSV_COLUMNS, args.format, out)
    return 0


def cmd_sample(args, out) -> int:
    _check_nk(args.n, args.k)
    try:
        cfg = SamplerConfig(args.n, args.k, args.seed, args.trials)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.stat is None:
        rows = [{"rgf": p.rgf_string(), "blocks": p.block_string()} for p in sample_stream(cfg)]
        _emit(rows, ("rgf", "blocks"), args.format, out)
        return 0
    stat = _stat(args.stat)
    est = empirical_mean(stat, cfg)
    row = {"statistic": stat.token, "n": args.n, "k": args.k, "seed": args.seed, **est.to_json()}
    if cf.has_closed_mean(stat) and args.n >= 1:
        exact = cf.closed_mean(stat, args.n, args.k)
        row["exact"] = _frac(exact)
        row["z_score"] = (est.mean - float(exact)) / est.stderr if est.stderr else 0.0
    cols = ("statistic", "n", "k", "seed", "trials", "mean", "stderr", "exact", "z_score")
    if args.format == "json":
        json.dump(row, out, indent=2)
        out.write("\n")
    else:
        _emit([row], cols, args.format, out)
    return 0


def cmd_table(args, out) -> int:
    n = args.n
    if n is None:
        try:
            n = int(os.environ.get(TABLE_ENV, "10"))
        except ValueError:
            raise UsageError(f"{TABLE_ENV} must be an integer") from None
    if n < 0:
        raise UsageError("table size must be >= 0")
    if args.kind == "bell":
        rows = [{"n": i, "bell": bell(i)} for i in range(n + 1)]
        cols = ("n", "bell")
    elif args.kind == "stirling":
        rows = [{"n": i, "k": k, "stirling2": stirling2(i, k)}
                for i in range(n + 1) for k in range(i + 1)]
        cols = ("n", "k", "stirling2")
    elif args.kind == "vseq":
        stat = _stat(args.stat or "los")
        v = vsequence(stat, n)
        rows = [{"m": m, "v": x} for m, x in enumerate(v.values[:n + 1])]
        cols = ("m", "v")
    else:
        stat = _stat(args.stat or "los")
        v = vsequence(stat, n)
        rows = []
        for i in range(1, n + 1):
            m = mean_n_engine(v, i).mean
            rows.append({"n": i, "mean": _frac(m), "mean_float": float(m)})
        cols = ("n", "mean", "mean_float")
    _emit(rows, cols, args.format, out)
    return 0


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="partstat", description="Exact statistics and means over set partitions.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, fmt="text"):
        sp.add_argument("--format", choices=("json", "csv", "text"), default=fmt)

    sp = sub.add_parser("enumerate", help="list partitions of [n] (optionally into k blocks)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    common(sp)

    sp = sub.add_parser("stat", help="evaluate a statistic on one partition")
    sp.add_argument("--stat", required=True)
    sp.add_argument("--partition", required=True, help="RGF like 1213 or blocks like '1 3/2 4'")
    common(sp)

    sp = sub.add_parser("mean", help="exact mean by closed form, engine and/or enumeration")
    sp.add_argument("--stat", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--method", choices=("all", "closed", "engine", "brute", "sampled"), default="all")
    sp.add_argument("--variant", choices=cf.VARIANTS, default="canonical")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=10000)
    common(sp)

    sp = sub.add_parser("verify", help="run the verification ledger")
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--only", nargs="*", help="restrict to named checks")
    common(sp)

    sp = sub.add_parser("asymptotics", help="exact vs asymptotic means on a grid")
    sp.add_argument("--stat", required=True)
    sp.add_argument("--grid", default="50,100,200,400")
    sp.add_argument("--k", type=int)
    common(sp, "csv")

    sp = sub.add_parser("sample", help="uniform random partitions or a Monte Carlo mean")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--stat")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=10)
    common(sp)

    sp = sub.add_parser("table", help="Bell/Stirling tables, v-sequences or mean tables")
    sp.add_argument("--kind", choices=("bell", "stirling", "vseq", "means"), default="bell")
    sp.add_argument("--n", type=int, help=f"table size (default ${TABLE_ENV} or 10)")
    sp.add_argument("--stat")
    common(sp)
    return p


VERBS = {
    "enumerate": cmd_enumerate,
    "stat": cmd_stat,
    "mean": cmd_mean,
    "verify": cmd_verify,
    "asymptotics": cmd_asymptotics,
    "sample": cmd_sample,
    "table": cmd_table,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return VERBS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"partstat: error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
