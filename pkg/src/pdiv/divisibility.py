"""Divisibility criteria for the two-level dynamical map.

All criteria are expressed as signed margins on the instantaneous rates
(gamma_plus, gamma_minus, Gamma): the map has the property at time t iff
the margin is >= 0.  Four equivalent P-divisibility tests are provided so
they can cross-check each other:

  * relaxation-rate inequalities (``p_margin_rates``),
  * the minimum of the Kossakowski quadratic form over real orthonormal
    bases (``kossakowski_min``),
  * the maximum of the Bloch-radius rate polynomial over the sphere
    (``radius_rate_max``),
  * the trace-norm derivative sampled over operators with r^2 >= Tr(q)^2
    (``trace_norm_derivative_margin``).

The criterion evaluators accept scalars or numpy arrays (broadcasting
element-wise), which keeps the Monte Carlo equivalence sweeps fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bloch import HermitianOp2
from .dynmap import IntegratedRates, RateFunction, RateSample

#: Samples with |margin| below this are treated as lying on a criterion
#: boundary during equivalence sweeps.
BOUNDARY_BAND = 1e-9


@dataclass(frozen=True)
class DivisibilityVerdict:
    """Per-time classification with signed margins.

    Flags are closed conditions: true iff margin >= -tol.  ``boundary``
    marks verdicts sitting within tol of a criterion boundary so that
    downstream renderers can single them out.  ``divergent`` verdicts
    carry non-finite margins and all-false flags.
    """

    cp: bool
    p: bool
    blp: bool
    margin_cp: float
    margin_p: float
    margin_p1: float
    margin_p2: float
    margin_blp: float
    boundary: bool = False
    divergent: bool = False


def default_tol(rs: RateSample) -> float:
    """Default boundary tolerance, scaled to the rate magnitudes."""
    return 1e-12 * max(1.0, abs(rs.gamma_plus), abs(rs.Gamma))


def cp_margin(gamma_plus, gamma_minus, Gamma):
    """CP-divisibility margin min(gamma_plus - |gamma_minus|, 2*Gamma - gamma_plus)."""
    return np.minimum(gamma_plus - np.abs(gamma_minus), 2.0 * Gamma - gamma_plus)


def p_margin_components(gamma_plus, gamma_minus, Gamma):
    """The two relaxation-rate P-divisibility components.

    c1 = gamma_plus - |gamma_minus| (units 1/time) and
    c2 = 4*Gamma*(gamma_plus - Gamma) - gamma_minus^2 (units 1/time^2)
    when 2*Gamma <= gamma_plus; c2 is +inf (vacuous) otherwise.  Only the
    signs are comparable across components.
    """
    c1 = gamma_plus - np.abs(gamma_minus)
    c2 = np.where(
        2.0 * Gamma <= gamma_plus,
        4.0 * Gamma * (gamma_plus - Gamma) - gamma_minus * gamma_minus,
        np.inf,
    )
    return c1, c2


def p_margin_rates(gamma_plus, gamma_minus, Gamma):
    """Relaxation-rate P-divisibility margin: min of the two components."""
    c1, c2 = p_margin_components(gamma_plus, gamma_minus, Gamma)
    return np.minimum(c1, c2)


def p_margin_fixed_point(gamma_plus, gamma_minus, Gamma):
    """Equivalent fixed-point form 2*Gamma - gamma_plus*(1 - sqrt(1 - z_fp^2)).

    Only defined when |z_fp| <= 1 and 2*Gamma <= gamma_plus; used as a
    cross-check of the second component of :func:`p_margin_components`.
    """
    z_fp = gamma_minus / gamma_plus
    return 2.0 * Gamma - gamma_plus * (1.0 - np.sqrt(1.0 - z_fp * z_fp))


def kossakowski_value(rs: RateSample, d2: float) -> float:
    """Kossakowski quadratic form reduced to the real basis parameter d^2.

    P(d^2) = -4 (Gamma - gamma_plus) d^4
             + 2 (2 Gamma - 2 gamma_plus + gamma_minus) d^2
             + gamma_plus - gamma_minus.
    """
    if not 0.0 <= d2 <= 1.0:
        raise ValueError("d2 must lie in [0, 1]")
    gp, gm, G = rs.gamma_plus, rs.gamma_minus, rs.Gamma
    return (
        -4.0 * (G - gp) * d2 * d2
        + 2.0 * (2.0 * G - 2.0 * gp + gm) * d2
        + gp
        - gm
    )


def kossakowski_min(gamma_plus, gamma_minus, Gamma):
    """Exact minimum of the Kossakowski form over d^2 in [0, 1].

    Writing P(X) = a X^2 + b X + c with a = 4 (gamma_plus - Gamma):
    when the parabola opens upward (Gamma < gamma_plus) and its vertex
    lies inside [0, 1], the minimum is the vertex value
    beta = Gamma + gamma_minus^2 / (4 (Gamma - gamma_plus)); in every
    other case it is attained at an endpoint, min(P(0), P(1)) with
    P(0) = gamma_plus - gamma_minus and P(1) = gamma_plus + gamma_minus.
    """
    gp = np.asarray(gamma_plus, dtype=float)
    gm = np.asarray(gamma_minus, dtype=float)
    G = np.asarray(Gamma, dtype=float)
    p0 = gp - gm
    p1 = gp + gm
    endpoint_min = np.minimum(p0, p1)
    diff = G - gp  # a = -4*diff
    with np.errstate(divide="ignore", invalid="ignore"):
        vertex_pos = 0.5 + gm / (4.0 * diff)
        vertex_val = G + gm * gm / (4.0 * diff)
    interior = (diff < 0.0) & (vertex_pos >= 0.0) & (vertex_pos <= 1.0)
    out = np.where(interior, vertex_val, endpoint_min)
    if out.ndim == 0:
        return float(out)
    return out


def radius_rate_max(gamma_plus, gamma_minus, Gamma):
    """Exact maximum of R(z) = (Gamma - gamma_plus) z^2 + gamma_minus z - Gamma
    over z in [-1, 1].

    P-divisible iff the maximum is <= 0.  The maximum is at the interior
    vertex z_m = -gamma_minus / (2 (Gamma - gamma_plus)) when the parabola
    opens downward (Gamma < gamma_plus) and z_m lies in [-1, 1]; otherwise
    at an endpoint, max(R(-1), R(1)) = -gamma_plus + |gamma_minus|.
    """
    gp = np.asarray(gamma_plus, dtype=float)
    gm = np.asarray(gamma_minus, dtype=float)
    G = np.asarray(Gamma, dtype=float)
    diff = G - gp
    endpoint_max = -gp + np.abs(gm)
    with np.errstate(divide="ignore", invalid="ignore"):
        z_m = -gm / (2.0 * diff)
        vertex_val = -G - gm * gm / (4.0 * diff)
    interior = (diff < 0.0) & (np.abs(z_m) <= 1.0)
    out = np.where(interior, vertex_val, endpoint_max)
    if out.ndim == 0:
        return float(out)
    return out


def trace_norm_derivative_margin(rs: RateSample, q: HermitianOp2) -> float:
    """Negated trace-norm-derivative expression at the operator q.

    Returns -[(Gamma - gamma_plus) z^2 + gamma_minus Tr(q) z - Gamma r^2].
    The trace-norm condition requires this to be >= 0 for every q with
    r^2 >= Tr(q)^2; a single operator provides a sampled (necessary-only)
    check.
    """
    gp, gm, G = rs.gamma_plus, rs.gamma_minus, rs.Gamma
    r2 = q.x * q.x + q.y * q.y + q.z * q.z
    return -((G - gp) * q.z * q.z + gm * q.trace * q.z - G * r2)


def trace_norm_margin_worst(gamma_plus, gamma_minus, Gamma, n_grid: int = 1000):
    """Worst sampled trace-norm-derivative margin over operators with
    r^2 >= Tr(q)^2.

    The operator family holds pure states (trace 1, r = 1) on a z-grid
    including the endpoints and the analytic extremum of the radius-rate
    polynomial, traceless unit-radius operators, and r > 1 scalings.
    Broadcasts over arrays of rate triples.
    """
    gp = np.atleast_1d(np.asarray(gamma_plus, dtype=float))[:, None]
    gm = np.atleast_1d(np.asarray(gamma_minus, dtype=float))[:, None]
    G = np.atleast_1d(np.asarray(Gamma, dtype=float))[:, None]

    def margins(trace, z, r2):
        return -((G - gp) * z * z + gm * trace * z - G * r2)

    zs = np.linspace(-1.0, 1.0, n_grid)[None, :]
    worst = margins(1.0, zs, 1.0).min(axis=1)
    # analytic extremum of R(z) on the pure-state slice, clipped to [-1, 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        z_m = gm / (2.0 * (gp - G))
    z_m = np.clip(np.nan_to_num(z_m, nan=0.0, posinf=1.0, neginf=-1.0), -1.0, 1.0)
    worst = np.minimum(worst, margins(1.0, z_m, 1.0).min(axis=1))
    # traceless unit-radius operators
    worst = np.minimum(worst, margins(0.0, np.array([[0.0, 1.0, -1.0]]), 1.0).min(axis=1))
    # r > 1 scalings of trace-one operators
    worst = np.minimum(worst, margins(1.0, 2.0 * zs, 4.0).min(axis=1))
    if np.isscalar(gamma_plus) or np.ndim(gamma_plus) == 0:
        return float(worst[0])
    return worst


def blp_margin(gamma_plus, gamma_minus, Gamma):
    """BLP (no information backflow) margin min(gamma_plus, Gamma)."""
    return np.minimum(gamma_plus, Gamma)


def global_positivity(ir: IntegratedRates) -> bool:
    """Positivity of the full map Phi(t) from the accumulated quantities.

    Requires gtilde_plus >= 0 and Gtilde >= 0, plus
    s^2 <= (1 - exp(-gtilde_plus))^2                  if gtilde_plus <= 2 Gtilde,
    s^2 <= (1 - exp(-2 Gtilde)) (1 - exp(-2 (gtilde_plus - Gtilde)))
                                                      if gtilde_plus >= 2 Gtilde.
    """
    if ir.divergent:
        return False
    if ir.gtilde_plus < 0.0 or ir.Gtilde < 0.0:
        return False
    s2 = ir.s * ir.s
    if ir.gtilde_plus <= 2.0 * ir.Gtilde:
        bound = (1.0 - math.exp(-ir.gtilde_plus)) ** 2
    else:
        bound = (1.0 - math.exp(-2.0 * ir.Gtilde)) * (
            1.0 - math.exp(-2.0 * (ir.gtilde_plus - ir.Gtilde))
        )
    return s2 <= bound


def verdict(rs: RateSample, tol: Optional[float] = None) -> DivisibilityVerdict:
    """Assemble the CP/P/BLP flags with signed margins.

    Closed boundary semantics: flag = (margin >= -tol).  The implication
    chain CP => P => BLP holds by the structure of the inequalities and is
    asserted, never patched.
    """
    if not rs.finite:
        nan = math.nan
        return DivisibilityVerdict(
            cp=False, p=False, blp=False,
            margin_cp=nan, margin_p=nan, margin_p1=nan, margin_p2=nan,
            margin_blp=nan, divergent=True,
        )
    if tol is None:
        tol = default_tol(rs)
    if tol < 0:
        raise ValueError("tol must be >= 0")
    gp, gm, G = rs.gamma_plus, rs.gamma_minus, rs.Gamma
    m_cp = float(cp_margin(gp, gm, G))
    c1, c2 = p_margin_components(gp, gm, G)
    c1, c2 = float(c1), float(c2)
    m_p = min(c1, c2)
    m_blp = float(blp_margin(gp, gm, G))

    cp = m_cp >= -tol
    p = m_p >= -tol
    blp = m_blp >= -tol
    assert not (cp and not p), "implication CP => P violated"
    assert not (p and not blp), "implication P => BLP violated"

    boundary = any(
        math.isfinite(m) and abs(m) <= tol for m in (m_cp, m_p, m_blp)
    )
    return DivisibilityVerdict(
        cp=cp, p=p, blp=blp,
        margin_cp=m_cp, margin_p=m_p, margin_p1=c1, margin_p2=c2,
        margin_blp=m_blp, boundary=boundary,
    )


def classify_timeline(
    rates: RateFunction,
    grid: Sequence[float],
    tol: Optional[float] = None,
) -> list[tuple[float, DivisibilityVerdict]]:
    """Evaluate verdicts on a sorted time grid."""
    grid = list(grid)
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be sorted ascending")
    return [(t, verdict(rates(t), tol)) for t in grid]
