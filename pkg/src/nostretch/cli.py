"""Command-line front end.

Spins are given as twice-values (``--two-j 1`` is j = 1/2).  Exit codes:
0 when every check passes, 1 when a check fails, 2 on usage or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .channel import (
    build_channel,
    channel_fidelity,
    literal_kraus,
    stretch_fidelity,
    stretch_fidelity_exact,
    verify_channel,
)
from .cloning import optimal_clone_global_fidelity, stretch_equals_clone
from .covariant import optimal_covariant_fidelity
from .estimation import (
    conditional_densities,
    likelihood,
    mutual_information_check,
    no_stretching_witness,
    povm_density,
    witness_is_impossible,
)
from .su2 import haar_sample, highest_weight, spin_label

SEED_ENV = "NOSTRETCH_SEED"
DEFAULT_TOL = 1e-8
LP_TOL = 1e-9
TABLE_TOL = 1e-10
MI_TOL = 0.01


class UsageError(Exception):
    pass


@dataclass
class Check:
    name: str
    value: float | str
    tolerance: float | None
    passed: bool

    def as_dict(self):
        return {"name": self.name, "value": _jsonable(self.value),
                "tolerance": self.tolerance, "pass": self.passed}


@dataclass
class RunReport:
    command: str
    parameters: dict
    seed: int | None = None
    results: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.results)

    def check(self, name, value, tolerance=None, passed=True):
        self.results.append(Check(name, value, tolerance, bool(passed)))

    def bound(self, name, value, tolerance):
        """Record ``value <= tolerance``."""
        self.check(name, value, tolerance, value <= tolerance)

    def info(self, name, value):
        self.check(name, value)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "results": [c.as_dict() for c in self.results],
            "pass": self.passed,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        params = "  ".join(f"{k}={v}" for k, v in self.parameters.items())
        lines = [f"{self.command}: {params}" + (f"  seed={self.seed}" if self.seed is not None else "")]
        for c in self.results:
            flag = "PASS" if c.passed else "FAIL"
            tol = "" if c.tolerance is None else f"  (tol {c.tolerance:g})"
            lines.append(f"  [{flag}] {c.name:<28} {_fmt(c.value)}{tol}")
        lines.append("OK" if self.passed else "FAILED")
        return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _spin_params(two_j, two_l=None) -> dict:
    p = {"j": spin_label(two_j)}
    if two_l is not None:
        p["l"] = spin_label(two_l)
    return p


# ---------------------------------------------------------------------------
# commands


def cmd_fidelity(two_j: int, two_l: int) -> RunReport:
    rep = RunReport("fidelity", _spin_params(two_j, two_l))
    closed = stretch_fidelity(two_j, two_l)
    computed = channel_fidelity(build_channel(two_j, two_l))
    rep.info("closed_form", closed)
    rep.info("channel", computed)
    rep.bound("difference", abs(closed - computed), TABLE_TOL)
    return rep


def fidelity_rows(two_j: int, two_l_max: int) -> list[tuple[int, float]]:
    return [(two_l, channel_fidelity(build_channel(two_j, two_l))) for two_l in range(two_l_max + 1)]


def render_table(rows, fmt: str) -> str:
    if fmt == "csv":
        return "two_l,fidelity\n" + "".join(f"{t},{f:.12g}\n" for t, f in rows)
    lines = [f"{'two_l':>6}  {'l':>5}  {'fidelity':>14}"]
    lines += [f"{t:>6}  {spin_label(t):>5}  {f:>14.12g}" for t, f in rows]
    return "\n".join(lines) + "\n"


def cmd_table(two_j: int, two_l_max: int, fmt: str = "table", out_path: str | None = None) -> tuple[RunReport, str]:
    rep = RunReport("table", {"j": spin_label(two_j), "two_l_max": two_l_max})
    rows = fidelity_rows(two_j, two_l_max)
    for two_l, f in rows:
        err = abs(f - float(stretch_fidelity_exact(two_j, two_l)))
        rep.check(f"fidelity[two_l={two_l}]", f, TABLE_TOL, err <= TABLE_TOL)
    text = rep.to_json() if fmt == "json" else render_table(rows, fmt)
    if out_path:
        try:
            with open(out_path, "w", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out_path}: {exc}") from exc
    return rep, text


def cmd_verify(two_j: int, two_l: int, samples: int, seed: int, tol: float,
               corrupt_phase: bool = False) -> RunReport:
    params = _spin_params(two_j, two_l) | {"samples": samples, "tol": tol}
    if corrupt_phase:
        params["corrupt_phase"] = True
    rep = RunReport("verify", params, seed)
    ch = literal_kraus(two_j, two_l) if corrupt_phase else build_channel(two_j, two_l)
    res = verify_channel(ch, samples, seed)
    for name, value in res.items():
        if name == "choi_min_eigenvalue":
            rep.check(name, value, tol, value >= -tol)
        else:
            rep.bound(name, value, tol)
    if two_j > two_l:
        out = ch.apply(la.projector(highest_weight(two_j)))
        rep.bound("exact_shrink_trace_distance",
                  la.trace_distance(out, la.projector(highest_weight(two_l))), tol)
    return rep


def cmd_optimize(two_j: int, two_l: int) -> RunReport:
    rep = RunReport("optimize", _spin_params(two_j, two_l))
    sol = optimal_covariant_fidelity(two_j, two_l)
    for two_J, f in sol.objective.items():
        rep.info(f"f_J[J={spin_label(two_J)}]", f)
    rep.info("winning_block", spin_label(sol.winning_block))
    rep.info("F_star", sol.fidelity)
    rep.bound("closed_form_gap", abs(sol.fidelity - stretch_fidelity(two_j, two_l)), LP_TOL)
    if two_j > 0 and two_l > 0:
        kappa = abs(two_j - two_l)
        rep.check("winner_is_|j-l|", spin_label(sol.winning_block), None, sol.winning_block == kappa)
    return rep


def cmd_witness(two_j: int, two_l: int, beta: float) -> RunReport:
    rep = RunReport("witness", _spin_params(two_j, two_l) | {"beta": beta})
    value = no_stretching_witness(two_j, two_l, beta)
    c = math.cos(beta / 2)
    if c == 0.0 or math.isclose(beta, math.pi):
        expected = math.inf if two_l > two_j else (1.0 if two_l == two_j else 0.0)
        ok = value == expected
    else:
        expected = c ** (two_j - two_l)
        ok = abs(value - expected) <= 1e-12 * max(1.0, expected)
    rep.check("ancilla_overlap", value, 1e-12, ok)
    rep.info("verdict", "IMPOSSIBLE" if witness_is_impossible(value) else "ALLOWED")
    return rep


def cmd_povm(two_j: int, seed: int) -> RunReport:
    rep = RunReport("povm", _spin_params(two_j), seed)
    lik = likelihood(two_j)
    rep.check("likelihood", lik, 1e-12, abs(lik - (two_j + 1)) <= 1e-12)
    g = haar_sample(np.random.default_rng(seed))
    p = povm_density(two_j, g)
    rep.bound("trace_error", abs(np.trace(p).real - (two_j + 1)), 1e-10)
    rep.check("min_eigenvalue", float(la.eigvals_hermitian(p)[0]), la.PSD_TOL,
              la.eigvals_hermitian(p)[0] >= -la.PSD_TOL)
    return rep


def cmd_info_check(two_j: int, two_l: int, samples: int, seed: int,
                   grid_size: int = 16, mi_samples: int = 20_000) -> RunReport:
    params = _spin_params(two_j, two_l) | {"samples": samples, "grid_size": grid_size,
                                            "mi_samples": mi_samples}
    rep = RunReport("info-check", params, seed)
    rng = np.random.default_rng(seed)
    ch = build_channel(two_j, two_l)
    gap = max(abs(np.subtract(*conditional_densities(two_j, two_l, haar_sample(rng), haar_sample(rng), ch)))
              for _ in range(samples))
    if two_l >= two_j:
        rep.bound("max|p-q|", gap, LP_TOL)
    else:
        rep.info("max|p-q|", gap)
    mi_in, mi_out = mutual_information_check(two_j, two_l, grid_size, mi_samples, rng)
    rep.info("mi_in", mi_in)
    rep.info("mi_out", mi_out)
    if two_l >= two_j:
        rep.bound("|mi_in-mi_out|", abs(mi_in - mi_out), MI_TOL)
    return rep


def cmd_clone_compare(m: int, n: int) -> RunReport:
    rep = RunReport("clone-compare", {"m": m, "n": n})
    f_clone, f_stretch, delta = stretch_equals_clone(m, n)
    rep.info("f_clone", f_clone)
    rep.info("f_stretch", f_stretch)
    rep.bound("delta", delta, LP_TOL)
    rep.bound("werner_gap", abs(optimal_clone_global_fidelity(m, n, [1, 0]) - (m + 1) / (n + 1)), LP_TOL)
    return rep


# ---------------------------------------------------------------------------
# argument handling


def _twice(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer twice-value, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"twice-value must be non-negative, got {v}")
    return v


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nostretch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def spins(p, l=True):
        p.add_argument("--two-j", type=_twice, required=True)
        if l:
            p.add_argument("--two-l", type=_twice, required=True)

    def fmt(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("fidelity", help="closed-form vs channel fidelity")
    spins(p)
    fmt(p)

    p = sub.add_parser("table", help="fidelity as a function of l")
    p.add_argument("--two-j", type=_twice, required=True)
    p.add_argument("--two-l-max", type=_twice, required=True)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="TP/CP/covariance/closed-form checks")
    spins(p)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--corrupt-phase", action="store_true",
                   help="use the non-covariant literal Kraus phases (negative control)")
    fmt(p)

    p = sub.add_parser("optimize", help="LP over all covariant channels")
    spins(p)
    fmt(p)

    p = sub.add_parser("witness", help="ancilla overlap required by exact transfer")
    spins(p)
    p.add_argument("--beta", type=float, default=math.pi / 2)
    fmt(p)

    p = sub.add_parser("povm", help="covariant POVM likelihood")
    spins(p, l=False)
    p.add_argument("--seed", type=int, default=None)
    fmt(p)

    p = sub.add_parser("info-check", help="measurement statistics before/after the channel")
    spins(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--grid-size", type=int, default=16)
    p.add_argument("--mi-samples", type=int, default=20_000)
    fmt(p)

    p = sub.add_parser("clone-compare", help="optimal m->n cloner vs stretching")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    fmt(p)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "table":
            rep, text = cmd_table(args.two_j, args.two_l_max, args.format, args.out)
            if not args.out:
                stdout.write(text)
            return 0 if rep.passed else 1
        if args.command == "fidelity":
            rep = cmd_fidelity(args.two_j, args.two_l)
        elif args.command == "verify":
            if args.samples < 1:
                raise UsageError("--samples must be at least 1")
            rep = cmd_verify(args.two_j, args.two_l, args.samples, _seed(args), args.tol, args.corrupt_phase)
        elif args.command == "optimize":
            rep = cmd_optimize(args.two_j, args.two_l)
        elif args.command == "witness":
            if not 0 <= args.beta <= math.pi:
                raise UsageError("--beta must lie in [0, pi]")
            rep = cmd_witness(args.two_j, args.two_l, args.beta)
        elif args.command == "povm":
            rep = cmd_povm(args.two_j, _seed(args))
        elif args.command == "info-check":
            if args.grid_size < 8 or args.samples < 1 or args.mi_samples < 1:
                raise UsageError("need --grid-size >= 8 and positive sample counts")
            rep = cmd_info_check(args.two_j, args.two_l, args.samples, _seed(args),
                                 args.grid_size, args.mi_samples)
        else:
            if not 1 <= args.m <= args.n <= 8:
                raise UsageError("need 1 <= m <= n <= 8")
            rep = cmd_clone_compare(args.m, args.n)
    except UsageError as exc:
        sys.stderr.write(f"nostretch: error: {exc}\n")
        return 2
    stdout.write(rep.to_json() if args.format == "json" else rep.to_text())
    return 0 if rep.passed else 1


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:   # argparse usage errors
        return int(exc.code or 0) and 2


if __name__ == "__main__":
    sys.exit(main())
