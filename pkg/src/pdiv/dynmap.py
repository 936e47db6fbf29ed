"""Dynamical map of the two-level time-local master equation.

The generator acts on Bloch coordinates as

    dx/dt = -Gamma x + omega y
    dy/dt = -omega x - Gamma y
    dz/dt = -gamma_plus z + gamma_minus

and the accumulated quantities (integrals of the rates plus the
inhomogeneous solution s) fully determine the map at time t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bloch import HermitianOp2


@dataclass(frozen=True)
class RateSample:
    """Instantaneous master-equation coefficients at one time.

    Rates may be negative; no positivity is assumed.  ``divergent`` marks
    samples where the underlying model blows up (the rates are then
    non-finite and must not be consumed as numbers).
    """

    gamma_plus: float
    gamma_minus: float
    Gamma: float
    omega: float
    t: float = 0.0
    divergent: bool = False

    @property
    def finite(self) -> bool:
        return not self.divergent and all(
            math.isfinite(v)
            for v in (self.gamma_plus, self.gamma_minus, self.Gamma, self.omega)
        )

    def diagonal_rates(self) -> tuple[float, float, float]:
        """Diagonal rates (gamma_1, gamma_2, gamma_3) of the GKLS form."""
        g12 = 0.5 * (self.gamma_plus + self.gamma_minus)
        g21 = 0.5 * (self.gamma_plus - self.gamma_minus)
        g3 = self.Gamma - 0.5 * self.gamma_plus
        return (g12, g21, g3)


@dataclass(frozen=True)
class IntegratedRates:
    """Accumulated quantities defining the map at time t.

    ``s`` solves ds/dt = -gamma_plus s + gamma_minus with s(0) = 0.
    ``divergent`` flags a non-finite rate encountered during integration;
    ``divergence_time`` then records where it happened.
    """

    gtilde_plus: float
    gtilde_minus: float
    Gtilde: float
    wtilde: float
    s: float
    t: float
    divergent: bool = False
    divergence_time: Optional[float] = None


RateFunction = Callable[[float], RateSample]


def integrate_rates(rates: RateFunction, t: float, step: float) -> IntegratedRates:
    """Integrate the four rate integrals and s(t) with fixed-step RK4.

    The ODE for s is co-integrated with the plain integrals so that the
    exponential weight exp(gtilde_plus) never has to be formed.  Halving
    ``step`` gives an O(step^4) refinement on smooth rate functions.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if step <= 0:
        raise ValueError("step must be > 0")
    if t == 0:
        return IntegratedRates(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    n_steps = max(1, math.ceil(t / step))
    h = t / n_steps

    def deriv(u: float, s: float):
        rs = rates(u)
        if not rs.finite:
            return None
        return (
            np.array([rs.gamma_plus, rs.gamma_minus, rs.Gamma, rs.omega]),
            -rs.gamma_plus * s + rs.gamma_minus,
            u,
        )

    acc = np.zeros(4)
    s = 0.0
    u = 0.0
    for _ in range(n_steps):
        k1 = deriv(u, s)
        k2 = deriv(u + 0.5 * h, s + 0.5 * h * k1[1]) if k1 else None
        k3 = deriv(u + 0.5 * h, s + 0.5 * h * k2[1]) if k2 else None
        k4 = deriv(u + h, s + h * k3[1]) if k3 else None
        if k4 is None:
            if k1 is None:
                bad_time = u
            elif k2 is None or k3 is None:
                bad_time = u + 0.5 * h
            else:
                bad_time = u + h
            return IntegratedRates(
                math.nan, math.nan, math.nan, math.nan, math.nan, t,
                divergent=True, divergence_time=bad_time,
            )
        acc = acc + (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        s = s + (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        u += h

    return IntegratedRates(
        gtilde_plus=float(acc[0]),
        gtilde_minus=float(acc[1]),
        Gtilde=float(acc[2]),
        wtilde=float(acc[3]),
        s=float(s),
        t=t,
    )


def apply_map(ir: IntegratedRates, q: HermitianOp2) -> HermitianOp2:
    """Apply the dynamical map to a Hermitian operator in Bloch form.

    The transverse coordinates rotate and contract,
    x' + i y' = exp(-Gtilde - i wtilde) (x + i y), and
    z' = s Tr(q) + exp(-gtilde_plus) z.  The trace is preserved exactly.
    """
    c = (q.x + 1j * q.y) * np.exp(-ir.Gtilde - 1j * ir.wtilde)
    z = ir.s * q.trace + math.exp(-ir.gtilde_plus) * q.z
    return HermitianOp2(trace=q.trace, x=float(c.real), y=float(c.imag), z=float(z))


def map_matrix(ir: IntegratedRates) -> np.ndarray:
    """The 4x4 map acting on the column vector (q11, q12, q21, q22)."""
    e_gp = math.exp(-ir.gtilde_plus)
    e_co = np.exp(-(ir.Gtilde - 1j * ir.wtilde))
    s = ir.s
    return 0.5 * np.array(
        [
            [1 + s + e_gp, 0, 0, 1 + s - e_gp],
            [0, 2 * e_co, 0, 0],
            [0, 0, 2 * np.conj(e_co), 0],
            [1 - s - e_gp, 0, 0, 1 - s + e_gp],
        ],
        dtype=complex,
    )


def instantaneous_fixed_point(rs: RateSample) -> Optional[float]:
    """z-coordinate of the unique instantaneous fixed point.

    Returns None when gamma_plus = 0, where the fixed point is not
    unique (or does not exist).
    """
    if rs.gamma_plus == 0.0:
        return None
    return rs.gamma_minus / rs.gamma_plus


def z_constant_ratio(z0: float, z_fp: float, gtilde_plus: float) -> float:
    """Closed-form z(t) valid when gamma_minus/gamma_plus is constant."""
    return z_fp - (z_fp - z0) * math.exp(-gtilde_plus)
