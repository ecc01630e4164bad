"""disksharp command line: compute constants, sweep them over p, run checks.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import verification
from .constants import (
    ConstantReport,
    Exponent,
    directional_constant,
    global_constant,
    gradient_constant,
    wirtinger_constant,
    wirtinger_constant_global,
)
from .errors import DomainError, NumericalError
from .kernel import DiskPoint, Direction

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

QUANTITIES = ("Cp_global", "cp_global", "Cp_at_z", "cp_at_r", "directional")
SUITES = ("lemmas", "fuzz", "prudnikov", "crossover", "sharpness", "all")
FUZZ_PS = ("1.5", "2", "4")
SHARPNESS_PS = ("1.5", "2", "3", "5")


def fmt(x: float) -> str:
    return "inf" if math.isinf(x) else format(x, ".10g")


def num(x: float):
    """JSON-friendly value rounded to 10 significant digits."""
    return "inf" if math.isinf(x) else float(fmt(x))


@dataclass(frozen=True)
class QuantitySpec:
    quantity: str
    r: float = 0.0
    alpha: float = 0.0
    tau: float = 0.0

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise DomainError(f"unknown quantity {self.quantity!r}")
        if not 0.0 <= self.r < 1.0:
            raise DomainError(f"r must lie in [0, 1), got {self.r}")

    def evaluate(self, p) -> ConstantReport:
        e = Exponent.parse(p)
        z = DiskPoint(self.r, self.alpha)
        if self.quantity == "Cp_global":
            return global_constant(e)
        if self.quantity == "cp_global":
            return wirtinger_constant_global(e)
        if self.quantity == "Cp_at_z":
            return gradient_constant(e, z)
        if self.quantity == "cp_at_r":
            return wirtinger_constant(e, self.r)
        return directional_constant(e, z, Direction(self.tau))


@dataclass(frozen=True)
class SweepSpec:
    target: QuantitySpec
    p_min: float = 1.05
    p_max: float = 20.0
    steps: int = 100
    fmt: str = "csv"

    def __post_init__(self):
        if not self.p_min > 1.0:
            raise DomainError(f"p-min must exceed 1, got {self.p_min}")
        if not self.p_max > self.p_min:
            raise DomainError("p-max must exceed p-min")
        if self.steps < 2:
            raise DomainError("steps must be at least 2")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {self.fmt!r}")

    def exponents(self) -> list[float]:
        if math.isinf(self.p_max):
            # uniform in the conjugate exponent, ending at q = 1
            q_hi = Exponent(self.p_min).q
            qs = np.linspace(q_hi, 1.0, self.steps)
            return [math.inf if q == 1.0 else q / (q - 1.0) for q in qs]
        return [float(p) for p in np.linspace(self.p_min, self.p_max, self.steps)]


def _sweep_cell(args):
    target, p = args
    return p, target.evaluate(p)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[tuple[float, ConstantReport]]:
    cells = [(spec.target, p) for p in spec.exponents()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_sweep_cell, cells))
    return [_sweep_cell(c) for c in cells]


def render_rows(rows, fmt_name: str) -> str:
    if fmt_name == "json":
        out = [{"p": num(p), "value": num(r.value), "method": r.method.value, "error": num(r.error_estimate)} for p, r in rows]
        return json.dumps(out, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["p", "value", "method", "error"])
    for p, r in rows:
        w.writerow([fmt(p), fmt(r.value), r.method.value, fmt(r.error_estimate)])
    return buf.getvalue()


def run_verify(suite: str, seed: int = 0, trials: int = 1000, ps=None, jobs: int = 1) -> list[verification.LemmaReport]:
    chosen = SUITES[:-1] if suite == "all" else (suite,)
    reports = []
    for name in chosen:
        if name == "lemmas":
            reports.append(verification.lemma_suite())
        elif name == "crossover":
            reports.append(verification.crossover_suite())
        elif name == "prudnikov":
            reports.append(verification.identity_suite(seed))
        elif name == "fuzz":
            for p in ps or FUZZ_PS:
                reports.append(verification.fuzz_inequalities(p, trials, seed, jobs=jobs))
        elif name == "sharpness":
            reports.append(verification.sharpness_suite(tuple(ps or SHARPNESS_PS)))
    return reports


def _summary(reports) -> dict:
    out = []
    for rep in reports:
        d = rep.as_dict()
        if rep.claim == "inequality-fuzz":
            # keep the JSON small: only failing trials are listed
            d["cells"] = [c for c in d["cells"] if not c["passed"]]
        out.append(d)
    return {"passed": all(r.passed for r in reports), "reports": out}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="disksharp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add_point(sp):
        sp.add_argument("--r", type=float, default=0.0, help="modulus of z")
        sp.add_argument("--alpha", type=float, default=0.0, help="argument of z")
        sp.add_argument("--tau", type=float, default=0.0, help="direction angle")

    c = sub.add_parser("constant", help="print one constant")
    c.add_argument("--quantity", choices=QUANTITIES, default="Cp_global")
    c.add_argument("--p", required=True, help="exponent in (1, inf]")
    c.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    c.add_argument("--out")
    add_point(c)

    s = sub.add_parser("sweep", help="tabulate a constant over a range of p")
    s.add_argument("--quantity", choices=QUANTITIES, default="Cp_global")
    s.add_argument("--p-min", type=float, default=1.05)
    s.add_argument("--p-max", type=float, default=20.0, help="may be inf")
    s.add_argument("--steps", type=int, default=100)
    s.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    add_point(s)

    v = sub.add_parser("verify", help="run verification suites, print JSON")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--p", action="append", help="exponent(s) for fuzz and sharpness; repeatable")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out")
    return ap


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    if args.command == "constant":
        rep = QuantitySpec(args.quantity, args.r, args.alpha, args.tau).evaluate(args.p)
        if args.fmt == "json":
            text = json.dumps({"quantity": args.quantity, "p": num(Exponent.parse(args.p).p), "value": num(rep.value),
                               "method": rep.method.value, "error": num(rep.error_estimate)}) + "\n"
        else:
            text = f"{fmt(rep.value)} {rep.method.value} {fmt(rep.error_estimate)}\n"
        _emit(text, args.out)
        return EXIT_OK
    if args.command == "sweep":
        spec = SweepSpec(QuantitySpec(args.quantity, args.r, args.alpha, args.tau), args.p_min, args.p_max, args.steps, args.fmt)
        _emit(render_rows(run_sweep(spec, args.jobs), spec.fmt), args.out)
        return EXIT_OK
    for p in args.p or ():
        Exponent.parse(p)
    reports = run_verify(args.suite, args.seed, args.trials, args.p, args.jobs)
    summary = _summary(reports)
    _emit(json.dumps(summary, indent=1) + "\n", args.out)
    return EXIT_OK if summary["passed"] else EXIT_FAILED


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except DomainError as exc:
        print(f"disksharp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"disksharp: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
