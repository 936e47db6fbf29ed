"""Command-line front end: timelines, region maps, and verification sweeps.

Subcommands:

  timeline  evaluate a rate model on a time grid and emit the verdict CSV
  region    classify the (Gamma, gamma_plus) plane for a fixed gamma_minus
  sweep     Monte Carlo cross-check of the equivalent P-divisibility criteria

Output is CSV (or a plain-text report for ``sweep``), deterministic for a
fixed configuration and seed.  An optional ``--config`` file may hold
``key = value`` pairs mirroring the flag names; explicit flags win.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

import numpy as np

from . import divisibility as dv
from . import jaynes_cummings as jc
from . import rate_models
from .dynmap import RateSample

TIMELINE_HEADER = (
    "t,gamma_plus,gamma_minus,Gamma,omega,cp,p,blp,"
    "margin_cp,margin_p1,margin_p2,margin_blp,divergent"
)
REGION_HEADER = "Gamma,gamma_plus,region"

#: Sampling range for the equivalence sweep; wide enough to cover every
#: region of the (Gamma, gamma_plus) phase diagram.
SWEEP_RANGE = 3.0


def _fmt(v: float) -> str:
    """Shortest round-trip decimal representation."""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    return repr(float(v))


def _fmt_or_empty(v: float) -> str:
    return "" if not math.isfinite(v) else _fmt(v)


# ---------------------------------------------------------------------------
# timeline
# ---------------------------------------------------------------------------

def _build_model(args) -> tuple:
    """Resolve the rate model; returns (rate_function, grid_evaluator, unit)."""
    name = args.model
    if name == "eternal-nm":
        return rate_models.eternal_nm, None, "dimensionless"
    if name == "lossy-cavity":
        gamma = args.gamma
        shift = args.s_shift
        model = rate_models.lossy_cavity_model(lambda t: gamma, lambda t: shift)
        return model, None, "dimensionless"
    if name == "jc":
        params = jc.JCParams(
            omega_a=1.0,
            omega_b=args.omega_b,
            delta=args.delta,
            g=args.g,
            beta_b=args.beta_b,
            series_tol=args.series_tol,
        )
        return (
            jc.jc_rate_model(params),
            lambda ts: jc.jc_rates_grid(ts, params),
            "1/omega_A",
        )
    if name == "tabulated":
        if args.table is None:
            raise ValueError("--table is required for the tabulated model")
        table = rate_models.TabulatedRates.from_csv(args.table)
        return table, None, "dimensionless"
    raise ValueError(f"unknown model {name!r}")


def _timeline_row(rs: RateSample, tol: Optional[float]) -> str:
    v = dv.verdict(rs, tol)
    if v.divergent:
        rates = [_fmt_or_empty(x) for x in (rs.gamma_plus, rs.gamma_minus, rs.Gamma, rs.omega)]
        return ",".join([_fmt(rs.t), *rates, "0", "0", "0", "", "", "", "", "1"])
    return ",".join(
        [
            _fmt(rs.t),
            _fmt(rs.gamma_plus),
            _fmt(rs.gamma_minus),
            _fmt(rs.Gamma),
            _fmt(rs.omega),
            _fmt(v.cp),
            _fmt(v.p),
            _fmt(v.blp),
            _fmt(v.margin_cp),
            _fmt(v.margin_p1),
            _fmt_or_empty(v.margin_p2),
            _fmt(v.margin_blp),
            "0",
        ]
    )


def run_timeline(args, out: TextIO) -> None:
    model, grid_eval, unit = _build_model(args)
    ts = np.linspace(0.0, args.t_max, args.points)
    samples = grid_eval(ts) if grid_eval is not None else [model(float(t)) for t in ts]
    out.write(f"# time unit: {unit}\n")
    out.write(TIMELINE_HEADER + "\n")
    for rs in samples:
        out.write(_timeline_row(rs, args.tol) + "\n")


# ---------------------------------------------------------------------------
# region map
# ---------------------------------------------------------------------------

def classify_region(Gamma: float, gamma_plus: float, gamma_minus: float) -> str:
    """Region label of one (Gamma, gamma_plus) cell: CP, P_only, BLP_only or none."""
    if dv.cp_margin(gamma_plus, gamma_minus, Gamma) >= 0.0:
        return "CP"
    if dv.p_margin_rates(gamma_plus, gamma_minus, Gamma) >= 0.0:
        return "P_only"
    if dv.blp_margin(gamma_plus, gamma_minus, Gamma) >= 0.0:
        return "BLP_only"
    return "none"


def run_region_map(args, out: TextIO) -> None:
    gammas = np.linspace(args.gamma_min, args.gamma_max, args.resolution)
    gps = np.linspace(args.gamma_plus_min, args.gamma_plus_max, args.resolution)
    out.write(f"# gamma_minus = {_fmt(args.gamma_minus)}\n")
    out.write(REGION_HEADER + "\n")
    for G in gammas:
        for gp in gps:
            label = classify_region(float(G), float(gp), args.gamma_minus)
            out.write(f"{_fmt(G)},{_fmt(gp)},{label}\n")


# ---------------------------------------------------------------------------
# equivalence sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    n_samples: int
    seed: int
    n_boundary: int
    disagreements: int
    worst_discrepancy: float
    chain_violations: int


def run_equivalence_sweep(
    n_samples: int,
    seed: int,
    perturb: float = 0.0,
    band: float = dv.BOUNDARY_BAND,
) -> SweepResult:
    """Cross-check the three closed-form P-divisibility criteria.

    Draws uniform rate triples, evaluates the relaxation-rate margin, the
    Kossakowski minimum, and the negated radius-rate maximum, and counts
    sign disagreements outside the boundary band.  ``perturb`` shifts the
    Kossakowski values (self-test mode: a nonzero shift must produce
    disagreements).  Also counts CP => P => BLP chain violations.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    gp, gm, G = rng.uniform(-SWEEP_RANGE, SWEEP_RANGE, size=(3, n_samples))

    m_p = dv.p_margin_rates(gp, gm, G)
    m_k = dv.kossakowski_min(gp, gm, G) + perturb
    m_r = -dv.radius_rate_max(gp, gm, G)

    boundary = (np.abs(m_p) < band) | (np.abs(m_k) < band) | (np.abs(m_r) < band)
    ok = ~boundary
    s_p, s_k, s_r = m_p > 0, m_k > 0, m_r > 0
    disagree = ok & ((s_p != s_k) | (s_p != s_r))
    if disagree.any():
        worst = float(
            np.max(np.minimum(np.minimum(np.abs(m_p), np.abs(m_k)), np.abs(m_r))[disagree])
        )
    else:
        worst = 0.0

    m_cp = dv.cp_margin(gp, gm, G)
    m_blp = dv.blp_margin(gp, gm, G)
    chain = int(np.sum((m_cp >= 0) & (m_p < 0)) + np.sum((m_p >= 0) & (m_blp < 0)))

    return SweepResult(
        n_samples=n_samples,
        seed=seed,
        n_boundary=int(boundary.sum()),
        disagreements=int(disagree.sum()),
        worst_discrepancy=worst,
        chain_violations=chain,
    )


def run_sweep(args, out: TextIO) -> None:
    result = run_equivalence_sweep(args.samples, args.seed, perturb=args.perturb)
    out.write(f"samples: {result.n_samples}\n")
    out.write(f"seed: {result.seed}\n")
    out.write(f"boundary_excluded: {result.n_boundary}\n")
    out.write(f"disagreements: {result.disagreements}\n")
    out.write(f"worst_discrepancy: {_fmt(result.worst_discrepancy)}\n")
    out.write(f"chain_violations: {result.chain_violations}\n")


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _load_config(path: str) -> dict:
    """Parse a ``key = value`` config file mirroring the flag names."""
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {raw.rstrip()}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdiv",
        description="Divisibility analysis of two-level open-system dynamical maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="key = value file mirroring flag names")
        sp.add_argument("--out", help="output path (default stdout)")

    tl = sub.add_parser("timeline", help="rates and verdicts on a time grid")
    add_common(tl)
    tl.add_argument(
        "--model",
        choices=["eternal-nm", "lossy-cavity", "jc", "tabulated"],
        default="eternal-nm",
    )
    tl.add_argument("--t-max", type=float, default=10.0)
    tl.add_argument("--points", type=int, default=2001)
    tl.add_argument("--tol", type=float, default=None,
                    help="boundary tolerance (default: 1e-12 relative)")
    tl.add_argument("--step", type=float, default=1e-3,
                    help="integrator step for accumulated quantities")
    tl.add_argument("--omega-b", type=float, default=0.6)
    tl.add_argument("--delta", type=float, default=0.4)
    tl.add_argument("--g", type=float, default=0.3)
    tl.add_argument("--beta-b", type=float, default=2.0)
    tl.add_argument("--series-tol", type=float, default=1e-12)
    tl.add_argument("--gamma", type=float, default=1.0,
                    help="constant cavity decay rate (lossy-cavity)")
    tl.add_argument("--s-shift", type=float, default=0.0,
                    help="constant Lamb-shift term S (lossy-cavity)")
    tl.add_argument("--table", help="rate-table CSV (tabulated model)")

    rg = sub.add_parser("region", help="(Gamma, gamma_plus) region map")
    add_common(rg)
    rg.add_argument("--gamma-minus", type=float, default=0.0)
    rg.add_argument("--gamma-min", type=float, default=-0.5)
    rg.add_argument("--gamma-max", type=float, default=3.0)
    rg.add_argument("--gamma-plus-min", type=float, default=-0.5)
    rg.add_argument("--gamma-plus-max", type=float, default=3.0)
    rg.add_argument("--resolution", type=int, default=400)

    sw = sub.add_parser("sweep", help="criterion-equivalence Monte Carlo sweep")
    add_common(sw)
    sw.add_argument("--samples", type=int, default=100_000)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--perturb", type=float, default=0.0,
                    help="self-test shift applied to the Kossakowski minimum")

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        explicit = {
            token.split("=", 1)[0].lstrip("-").replace("-", "_")
            for token in argv
            if token.startswith("--")
        }
        for key, val in _load_config(args.config).items():
            if key in explicit:
                continue
            if not hasattr(args, key):
                raise ValueError(f"unknown config key: {key}")
            if key in ("model", "table", "out"):
                setattr(args, key, val)
            elif key in ("points", "resolution", "samples", "seed"):
                setattr(args, key, int(val))
            else:
                setattr(args, key, float(val))
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, list(argv) if argv is not None else sys.argv[1:])
    except (ValueError, OSError) as exc:
        print(f"pdiv: error: {exc}", file=sys.stderr)
        return 2

    runners = {"timeline": run_timeline, "region": run_region_map, "sweep": run_sweep}
    runner = runners[args.command]
    try:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                runner(args, fh)
        else:
            runner(args, sys.stdout)
    except (ValueError, OSError) as exc:
        print(f"pdiv: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
