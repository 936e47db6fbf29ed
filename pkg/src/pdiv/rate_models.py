"""Canonical rate functions and rate-table ingestion.

Every model conforms to the ``time -> RateSample`` interface consumed by
the integrator, the classifiers, and the CLI.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .dynmap import RateFunction, RateSample


def eternal_nm(t: float) -> RateSample:
    """Eternally non-Markovian dephasing model.

    Multi-channel dephasing with gamma_x = gamma_y = 1 and
    gamma_z = -tanh(t); in Bloch-rate form gamma_plus = 2,
    gamma_minus = 0, Gamma = 1 - tanh(t), omega = 0.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    return RateSample(
        gamma_plus=2.0,
        gamma_minus=0.0,
        Gamma=1.0 - math.tanh(t),
        omega=0.0,
        t=t,
    )


def lossy_cavity(
    gamma_fn: Callable[[float], float],
    S_fn: Callable[[float], float],
    t: float,
) -> RateSample:
    """Qubit coupled to a lossy cavity.

    gamma_minus = gamma_plus = gamma(t), Gamma = gamma(t)/2 and
    omega = S(t)/2, so the instantaneous fixed point sits at z_fp = 1.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    g = gamma_fn(t)
    return RateSample(
        gamma_plus=g,
        gamma_minus=g,
        Gamma=0.5 * g,
        omega=0.5 * S_fn(t),
        t=t,
    )


def lossy_cavity_model(
    gamma_fn: Callable[[float], float],
    S_fn: Callable[[float], float] = lambda t: 0.0,
) -> RateFunction:
    """Bind the lossy-cavity rate functions into a time -> RateSample callable."""
    return lambda t: lossy_cavity(gamma_fn, S_fn, t)


def constant_rates(
    gamma_plus: float, gamma_minus: float, Gamma: float, omega: float = 0.0
) -> RateFunction:
    """Time-independent rates, mostly for tests and region sweeps."""
    return lambda t: RateSample(gamma_plus, gamma_minus, Gamma, omega, t=t)


class TabulatedRates:
    """Rates interpolated linearly (per component) from a sorted table.

    Queries outside the table range raise ValueError.  Exact on knots;
    divergent knots poison any query touching them.
    """

    def __init__(self, samples: Sequence[tuple[float, RateSample]]):
        if not samples:
            raise ValueError("empty rate table")
        ts = [t for t, _ in samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("table times must be strictly increasing")
        self._t = np.array(ts)
        self._vals = np.array(
            [
                [rs.gamma_plus, rs.gamma_minus, rs.Gamma, rs.omega]
                for _, rs in samples
            ]
        )
        self._divergent = np.array([rs.divergent for _, rs in samples])

    @classmethod
    def from_csv(cls, path: str | Path) -> "TabulatedRates":
        """Read the timeline CSV schema emitted by the CLI.

        Only the t, gamma_plus, gamma_minus, Gamma, omega columns (plus
        the optional divergent flag) are consumed; leading '#' comment
        lines are skipped.
        """
        with open(path, newline="") as fh:
            lines = [ln for ln in fh if not ln.startswith("#")]
        reader = csv.DictReader(lines)
        required = {"t", "gamma_plus", "gamma_minus", "Gamma", "omega"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            missing = sorted(required - set(reader.fieldnames or []))
            raise ValueError(f"rate table missing columns: {missing}")
        samples = []
        for row in reader:
            t = float(row["t"])
            divergent = row.get("divergent", "0") in ("1", "true", "True")
            if divergent:
                rs = RateSample(
                    math.nan, math.nan, math.nan, math.nan, t=t, divergent=True
                )
            else:
                rs = RateSample(
                    gamma_plus=float(row["gamma_plus"]),
                    gamma_minus=float(row["gamma_minus"]),
                    Gamma=float(row["Gamma"]),
                    omega=float(row["omega"]),
                    t=t,
                )
            samples.append((t, rs))
        return cls(samples)

    def __call__(self, t: float) -> RateSample:
        t0, t1 = self._t[0], self._t[-1]
        if t < t0 or t > t1:
            raise ValueError(f"t={t} outside table range [{t0}, {t1}]")
        i = int(np.searchsorted(self._t, t, side="right")) - 1
        i = min(max(i, 0), len(self._t) - 1)
        if self._t[i] == t:
            if self._divergent[i]:
                return RateSample(
                    math.nan, math.nan, math.nan, math.nan, t=t, divergent=True
                )
            gp, gm, G, w = self._vals[i]
            return RateSample(gp, gm, G, w, t=t)
        if self._divergent[i] or self._divergent[i + 1]:
            return RateSample(
                math.nan, math.nan, math.nan, math.nan, t=t, divergent=True
            )
        frac = (t - self._t[i]) / (self._t[i + 1] - self._t[i])
        gp, gm, G, w = (1.0 - frac) * self._vals[i] + frac * self._vals[i + 1]
        return RateSample(float(gp), float(gm), float(G), float(w), t=t)
