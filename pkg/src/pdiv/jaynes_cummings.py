"""Exact master-equation rates for a qubit exchanging with one thermal mode.

The qubit (frequency omega_a) couples to a single bosonic mode (frequency
omega_b) prepared in a thermal state; the reduced qubit dynamics obeys an
exact time-local master equation whose coefficients are thermal series over
the mode occupation n, with Rabi splittings Omega_n = sqrt(delta^2 + 4 g^2 n).
All series are truncated where the geometric tail of the thermal weights
drops below ``series_tol`` and evaluated with term-wise analytic time
derivatives (finite differences are kept only as a test oracle).

Times are measured in units of 1/omega_a when the parameters are given as
ratios to omega_a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynmap import RateFunction, RateSample

#: Relative threshold on |alpha + beta - 1| below which the population
#: rates are reported as divergent instead of huge finite numbers.
DENOMINATOR_THRESHOLD = 1e-12

#: |gamma_c| below this (gamma_c(0) = 1 sets the scale) makes the
#: decoherence rate and frequency shift divergent.
GAMMA_C_THRESHOLD = 1e-12


@dataclass(frozen=True)
class JCParams:
    """Model parameters; delta is an independent input.

    ``beta_b`` is the inverse mode temperature (hbar = k_B = 1), so
    ``beta_b * omega_b`` must be positive for the thermal weights to be
    normalizable.
    """

    omega_a: float
    omega_b: float
    delta: float
    g: float
    beta_b: float
    series_tol: float = 1e-12

    def __post_init__(self):
        if self.beta_b * self.omega_b <= 0.0:
            raise ValueError("beta_b * omega_b must be > 0")
        if not 0.0 < self.series_tol < 1.0:
            raise ValueError("series_tol must lie in (0, 1)")

    @property
    def theta(self) -> float:
        """Thermal exponent beta_b * omega_b."""
        return self.beta_b * self.omega_b


#: Parameter sets of the three reference regimes, in omega_a = 1 units.
COLD_MODE = JCParams(omega_a=1.0, omega_b=0.6, delta=0.4, g=0.3, beta_b=2.0)
HOT_MODE = JCParams(omega_a=1.0, omega_b=0.6, delta=0.4, g=0.03, beta_b=0.3)
WEAK_COUPLING = JCParams(omega_a=1.0, omega_b=0.6, delta=1e-4, g=1e-3, beta_b=0.3)


@dataclass(frozen=True)
class JCCoefficients:
    """Series coefficients and their analytic time derivatives at one time."""

    alpha: float
    beta: float
    alpha_dot: float
    beta_dot: float
    gamma_c: complex
    gamma_c_dot: complex
    t: float


def omega_n(n: int, p: JCParams) -> float:
    """Rabi splitting sqrt(delta^2 + 4 g^2 n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.sqrt(p.delta * p.delta + 4.0 * p.g * p.g * n)


def thermal_weight(n: int, p: JCParams) -> float:
    """Thermal occupation probability p_n = e^(-n theta) (1 - e^(-theta))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.exp(-n * p.theta) * (1.0 - math.exp(-p.theta))


def truncation_index(p: JCParams) -> int:
    """Smallest N with tail sum e^(-N theta)/(1 - e^(-theta)) < series_tol."""
    theta = p.theta
    target = p.series_tol * (1.0 - math.exp(-theta))
    n = max(1, math.ceil(-math.log(target) / theta))
    while math.exp(-n * theta) >= target:
        n += 1
    return n


def _sin_half_over(omegas: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """sin(omega t / 2) / omega with the Taylor limit t/2 for small omega t.

    ``omegas`` has shape (N,), ``ts`` shape (T,); returns shape (T, N).
    """
    x = 0.5 * np.outer(ts, omegas)
    small = np.abs(x) < 1e-8
    safe = np.where(omegas == 0.0, 1.0, omegas)[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            small,
            0.5 * ts[:, None] * (1.0 - x * x / 6.0),
            np.sin(x) / safe,
        )
    return out


def _series_arrays(p: JCParams):
    """Shared n-indexed arrays: weights and splittings up to the cutoff."""
    n_max = truncation_index(p)
    n = np.arange(n_max + 2)  # beta needs Omega up to n_max + 1
    omegas = np.sqrt(p.delta * p.delta + 4.0 * p.g * p.g * n)
    weights = np.exp(-n[: n_max + 1] * p.theta)
    weights = weights / weights.sum()  # normalized truncated thermal weights
    return n, omegas, weights


def coefficients_grid(ts: Sequence[float], p: JCParams) -> list[JCCoefficients]:
    """Evaluate the series coefficients on a whole time grid at once."""
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0):
        raise ValueError("times must be >= 0")
    n, omegas, weights = _series_arrays(p)
    n_keep = len(weights)

    # (t, n) tables of the bracket A_n = cos(O t/2) - i delta sin(O t/2)/O
    # and its derivative.
    half = 0.5 * np.outer(ts, omegas)  # shape (T, N+2)
    cos_half = np.cos(half)
    sin_half = np.sin(half)
    sin_over = _sin_half_over(omegas, ts)
    a_term = cos_half - 1j * p.delta * sin_over
    a_dot = -0.5 * omegas[None, :] * sin_half - 1j * (0.5 * p.delta) * cos_half

    w = weights[None, :]
    abs2 = (a_term.real**2 + a_term.imag**2)
    alpha = (w * abs2[:, :n_keep]).sum(axis=1)
    beta = (w * abs2[:, 1 : n_keep + 1]).sum(axis=1)

    # d|A_n|^2/dt = (delta^2 - Omega_n^2)/Omega_n cos sin = -4 g^2 n cos sin / Omega_n,
    # written in the cancellation-free -4 g^2 n form (exactly zero at n = 0).
    dterm = -4.0 * p.g * p.g * n[None, :] * cos_half * sin_over
    alpha_dot = (w * dterm[:, :n_keep]).sum(axis=1)
    beta_dot = (w * dterm[:, 1 : n_keep + 1]).sum(axis=1)

    pair = a_term[:, :n_keep] * a_term[:, 1 : n_keep + 1]
    pair_dot = (
        a_dot[:, :n_keep] * a_term[:, 1 : n_keep + 1]
        + a_term[:, :n_keep] * a_dot[:, 1 : n_keep + 1]
    )
    phase = np.exp(-1j * p.omega_b * ts)
    core = (w * pair).sum(axis=1)
    core_dot = (w * pair_dot).sum(axis=1)
    gamma_c = phase * core
    gamma_c_dot = phase * (core_dot - 1j * p.omega_b * core)

    return [
        JCCoefficients(
            alpha=float(alpha[i]),
            beta=float(beta[i]),
            alpha_dot=float(alpha_dot[i]),
            beta_dot=float(beta_dot[i]),
            gamma_c=complex(gamma_c[i]),
            gamma_c_dot=complex(gamma_c_dot[i]),
            t=float(ts[i]),
        )
        for i in range(len(ts))
    ]


def coefficients(t: float, p: JCParams) -> JCCoefficients:
    """Series coefficients alpha, beta, gamma_c and derivatives at time t."""
    return coefficients_grid([t], p)[0]


def _rates_from_coefficients(c: JCCoefficients, p: JCParams) -> RateSample:
    den = c.alpha + c.beta - 1.0
    if abs(den) < DENOMINATOR_THRESHOLD * (c.alpha + c.beta) or abs(
        c.gamma_c
    ) < GAMMA_C_THRESHOLD:
        return RateSample(
            math.nan, math.nan, math.nan, math.nan, t=c.t, divergent=True
        )
    g1 = (c.alpha * c.beta_dot - c.alpha_dot * c.beta - c.beta_dot) / den
    g2 = (c.alpha_dot * c.beta - c.alpha * c.beta_dot - c.alpha_dot) / den
    ratio = c.gamma_c_dot / c.gamma_c
    gamma_plus = g1 + g2
    gamma_minus = g1 - g2
    Gamma = -ratio.real  # gamma_3 + gamma_plus / 2
    omega = -ratio.imag
    if not all(map(math.isfinite, (gamma_plus, gamma_minus, Gamma, omega))):
        return RateSample(
            math.nan, math.nan, math.nan, math.nan, t=c.t, divergent=True
        )
    return RateSample(gamma_plus, gamma_minus, Gamma, omega, t=c.t)


def jc_rates(t: float, p: JCParams) -> RateSample:
    """Master-equation rates (gamma_plus, gamma_minus, Gamma, omega) at time t."""
    return _rates_from_coefficients(coefficients(t, p), p)


def jc_rates_grid(ts: Sequence[float], p: JCParams) -> list[RateSample]:
    """Rates on a whole time grid, sharing the series tables."""
    return [_rates_from_coefficients(c, p) for c in coefficients_grid(ts, p)]


def jc_rate_model(p: JCParams) -> RateFunction:
    """Bind the parameters into a time -> RateSample callable."""
    return lambda t: jc_rates(t, p)


def fixed_point_z(p: JCParams) -> float:
    """Time-independent fixed point z_fp = -tanh(theta / 2)."""
    return -math.tanh(0.5 * p.theta)


@dataclass(frozen=True)
class ShortTimeFit:
    """Log-log fit of |Gamma - gamma_plus/2| over a short-time window."""

    exponent: float
    residual: float
    valid: bool
    samples: int = 0


def short_time_order(p: JCParams, t_window: Sequence[float]) -> ShortTimeFit:
    """Fitted power of the tangency gap Gamma(t) - gamma_plus(t)/2.

    Least-squares slope of log|gap| against log t over the window; the
    gap vanishes to cubic order at t = 0.  The fit is flagged invalid
    when any sample diverges or the gap is too small to resolve in
    double precision.
    """
    ts = np.asarray(list(t_window), dtype=float)
    if np.any(ts <= 0):
        raise ValueError("window times must be > 0")
    samples = jc_rates_grid(ts, p)
    gaps = []
    scales = []
    for rs in samples:
        if not rs.finite:
            return ShortTimeFit(math.nan, math.nan, valid=False)
        gaps.append(rs.Gamma - 0.5 * rs.gamma_plus)
        scales.append(max(abs(rs.Gamma), 0.5 * abs(rs.gamma_plus)))
    gaps = np.array(gaps)
    # The gap is a difference of two O(t) rates; when it drops below the
    # rounding floor of that subtraction the exponent is unresolvable.
    floor = 1e3 * np.finfo(float).eps * np.array(scales)
    if np.any(np.abs(gaps) < floor):
        return ShortTimeFit(math.nan, math.nan, valid=False, samples=len(ts))
    logs = np.log(np.abs(gaps))
    coeffs, residuals, *_ = np.polyfit(np.log(ts), logs, 1, full=True)
    rms = math.sqrt(residuals[0] / len(ts)) if len(residuals) else 0.0
    return ShortTimeFit(
        exponent=float(coeffs[0]), residual=rms, valid=True, samples=len(ts)
    )
