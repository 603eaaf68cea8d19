"""Command line: ``xkraw {poly,classical,quantum}``.

Exit codes: 0 success, 2 usage or configuration error, 3 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import classical_walk as cw
from . import quantum_walk as qw
from .errors import IndexOutOfRange, InvalidConfig, XKrawError
from .exactnum import PiMultiple
from .krawtchouk import ModelConfig, build_table
from .render import BubblePlotSpec, fmt, render_svg, to_csv, to_json

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3

Time = Union[float, PiMultiple]


class UsageError(Exception):
    pass


def parse_p(text: str) -> Fraction:
    try:
        p = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"p must be a rational 'a/b', got {text!r}")
    if not 0 < p < 1:
        raise UsageError(f"p must satisfy 0 < p < 1, got {text!r}")
    return p


def parse_time(text: str) -> Time:
    """``"7/2pi"`` stays an exact multiple of pi; anything else is a float."""
    if "pi" in text:
        try:
            return PiMultiple.parse(text)
        except ValueError as exc:
            raise UsageError(str(exc))
    try:
        t = float(text)
    except ValueError:
        raise UsageError(f"not a time: {text!r}")
    return t


@dataclass
class RunConfig:
    command: str
    N: int
    p: Fraction
    ell: int = 2
    times: list = field(default_factory=list)
    start: Optional[int] = None
    seed: int = 0
    trajectories: int = 100_000
    out: Optional[str] = None
    format: str = "csv"
    oracle: bool = False
    stationary: bool = False
    detect: bool = False
    area_mode: bool = False

    @property
    def model(self) -> ModelConfig:
        try:
            return ModelConfig(self.N, self.p, self.ell)
        except InvalidConfig as exc:
            raise UsageError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xkraw",
        description="Exceptional Krawtchouk polynomials and the walks built on them.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, required=True, help="grid size N")
    common.add_argument("--p", required=True, help="probability as 'a/b'")
    common.add_argument("--ell", type=int, default=2)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "svg", "json"), default="csv")
    common.add_argument("--t", action="append", default=[], metavar="TIME",
                        help="time, either decimal or 'k/mpi'; repeatable")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("poly", parents=[common],
                   help="values, weights and norms of the exceptional polynomials")

    c = sub.add_parser("classical", parents=[common],
                       help="transition probabilities of the birth-death walk")
    c.add_argument("--oracle", action="store_true",
                   help="add matrix-exponential and Gillespie columns with deltas")
    c.add_argument("--stationary", action="store_true",
                   help="append the exact stationary distribution")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trajectories", type=int, default=100_000)

    q = sub.add_parser("quantum", parents=[common], help="quantum walk amplitudes")
    q.add_argument("--start", type=int, default=1, help="initial site (0..N+1)")
    q.add_argument("--detect", action="store_true",
                   help="report perfect return time and half-period support")
    q.add_argument("--svg", action="store_true", help="same as --format svg")
    q.add_argument("--area-mode", action="store_true",
                   help="circle area, not radius, proportional to |c|")
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    fmt_ = "svg" if getattr(args, "svg", False) else args.format
    return RunConfig(
        command=args.command, N=args.N, p=parse_p(args.p), ell=args.ell,
        times=[parse_time(t) for t in args.t], start=getattr(args, "start", None),
        seed=getattr(args, "seed", 0), trajectories=getattr(args, "trajectories", 100_000),
        out=args.out, format=fmt_, oracle=getattr(args, "oracle", False),
        stationary=getattr(args, "stationary", False), detect=getattr(args, "detect", False),
        area_mode=getattr(args, "area_mode", False))


# commands -------------------------------------------------------------------

def cmd_poly(rc: RunConfig) -> str:
    """Polynomial values (``n,x,value``), weights (``,x,value``) and norms (``n,,value``)."""
    cfg = rc.model
    if not cfg.positive_weights:
        raise UsageError("poly tables are produced for even ell only")
    tab = build_table(cfg)
    if rc.format == "json":
        return to_json({
            "N": cfg.N, "p": cfg.p, "ell": cfg.ell,
            "labels": cfg.labels, "grid": cfg.grid,
            "values": [list(r) for r in tab.values],
            "weights": list(tab.weights), "norms": list(tab.norms)})
    if rc.format != "csv":
        raise UsageError("poly supports csv and json")
    rows = [(n, x, tab.value(n, x)) for n in cfg.labels for x in cfg.grid]
    rows += [(None, x, tab.weight(x)) for x in cfg.grid]
    rows += [(n, None, tab.norm(n)) for n in cfg.labels]
    return to_csv(("n", "x", "value"), rows)


def _walk_model(rc: RunConfig) -> ModelConfig:
    cfg = rc.model
    try:
        cfg.require_walk()
    except InvalidConfig as exc:
        raise UsageError(str(exc))
    return cfg


def cmd_classical(rc: RunConfig) -> str:
    cfg = _walk_model(rc)
    times = rc.times or [1.0]
    if any(float(t) < 0 for t in times):
        raise UsageError("times must be nonnegative")
    labels = cfg.labels
    A = cw.rate_matrix(cfg)
    header = ["t", "i", "j", "P"]
    if rc.oracle:
        header += ["matexp", "delta_matexp", "gillespie", "delta_gillespie"]
    rows, doc = [], []
    for t in times:
        tf = float(t)
        P = cw.transition_matrix(cfg, tf).entries
        E = cw.matexp_oracle(A, tf).entries if rc.oracle else None
        G = None
        if rc.oracle:
            G = np.array([cw.gillespie_sample(cfg, i, tf, rc.trajectories, rc.seed).frequencies
                          for i in labels])
        for a, i in enumerate(labels):
            for b, j in enumerate(labels):
                row = [t, i, j, P[a, b]]
                if rc.oracle:
                    row += [E[a, b], abs(P[a, b] - E[a, b]), G[a, b], abs(P[a, b] - G[a, b])]
                rows.append(row)
        doc.append({"t": t, "P": P, **({"matexp": E, "gillespie": G} if rc.oracle else {})})
    r = cw.stationary(cfg) if rc.stationary else None
    if r is not None:
        rows += [["stationary", None, j, rj] + [None] * (len(header) - 4)
                 for j, rj in zip(labels, r)]
    if rc.format == "json":
        out = {"N": cfg.N, "p": cfg.p, "labels": labels, "times": doc}
        if r is not None:
            out["stationary"] = list(r)
        return to_json(out)
    if rc.format != "csv":
        raise UsageError("classical supports csv and json")
    return to_csv(header, rows)


def _detect_lines(cfg: ModelConfig, start: int) -> list[str]:
    rep = qw.revival_report(cfg, start)
    lines = [f"t0 = {rep.t0}",
             f"fidelity = {fmt(rep.return_fidelity)}",
             f"half_time_support = {rep.half_time_support.value}"]
    if rep.theorem_prediction is not None:
        lines += [f"theorem_t0 = {rep.theorem_t0}",
                  f"theorem_prediction = {rep.theorem_prediction.value}",
                  f"agreement = {fmt(rep.agreement)}"]
    return lines


def cmd_quantum(rc: RunConfig) -> str:
    cfg = _walk_model(rc)
    start = 1 if rc.start is None else rc.start
    if not 0 <= start <= cfg.N + 1:
        raise UsageError(f"start site must be in 0..{cfg.N + 1}")
    parts = []
    if rc.detect:
        parts.append("\n".join(_detect_lines(cfg, start)) + "\n")
        if not rc.times:
            return "".join(parts)
    times = rc.times
    if not times:
        t0 = qw.perfect_return_time(cfg)
        times = [t0 * Fraction(k, 4) for k in range(5)]
    mags = np.array([qw.amplitude_matrix(cfg, t).magnitudes[start] for t in times])
    if rc.format == "svg":
        spec = BubblePlotSpec(mags, tuple(fmt(t) for t in times), rc.area_mode,
                              title=f"|c_{start}j(t)|, N = {cfg.N}, p = {cfg.p}")
        parts.append(render_svg(spec))
    elif rc.format == "json":
        parts.append(to_json({"N": cfg.N, "p": cfg.p, "start": start,
                              "times": list(times), "modulus": mags}))
    else:
        rows = [(t, start, j, mags[k, j]) for k, t in enumerate(times)
                for j in range(cfg.size)]
        parts.append(to_csv(("t", "i", "j", "modulus"), rows))
    return "\n".join(parts) if len(parts) > 1 else parts[0]


COMMANDS = {"poly": cmd_poly, "classical": cmd_classical, "quantum": cmd_quantum}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        rc = run_config(args)
        text = COMMANDS[rc.command](rc)
    except (UsageError, InvalidConfig, IndexOutOfRange) as exc:
        print(f"xkraw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (XKrawError, AssertionError, ArithmeticError) as exc:
        print(f"xkraw: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if rc.out:
        with open(rc.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
