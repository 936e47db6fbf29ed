"""Bloch representation of 2x2 Hermitian operators.

A Hermitian operator q is parametrized as

    q = (1/2) (Tr(q) I + x sigma_x + y sigma_y + z sigma_z),

so that q11 = (Tr(q)+z)/2, q22 = (Tr(q)-z)/2 and q12 = (x - i y)/2.
Density operators are the subset with Tr(q) = 1 and x^2+y^2+z^2 <= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Relative tolerance for Hermiticity validation in to_bloch.  Inputs come
# from exact constructions, so a loose tolerance would only hide bugs.
HERMITICITY_RTOL = 1e-10


@dataclass(frozen=True)
class HermitianOp2:
    """A 2x2 Hermitian operator in Bloch coordinates."""

    trace: float
    x: float
    y: float
    z: float

    @property
    def radius(self) -> float:
        """Bloch radius r = sqrt(x^2 + y^2 + z^2)."""
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_density_operator(self, atol: float = 0.0) -> bool:
        return abs(self.trace - 1.0) <= atol and self.radius <= 1.0 + atol


def to_bloch(q_matrix: np.ndarray, rtol: float = HERMITICITY_RTOL) -> HermitianOp2:
    """Convert a 2x2 Hermitian matrix to Bloch coordinates.

    Raises ValueError if the input deviates from Hermiticity by more than
    ``rtol`` relative to the largest entry magnitude.
    """
    m = np.asarray(q_matrix, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m - m.conj().T).max() > rtol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    trace = float(m[0, 0].real + m[1, 1].real)
    z = float(m[0, 0].real - m[1, 1].real)
    x = float(2.0 * m[0, 1].real)
    y = float(-2.0 * m[0, 1].imag)
    return HermitianOp2(trace=trace, x=x, y=y, z=z)


def from_bloch(op: HermitianOp2) -> np.ndarray:
    """Exact inverse of :func:`to_bloch`."""
    return 0.5 * np.array(
        [
            [op.trace + op.z, op.x - 1j * op.y],
            [op.x + 1j * op.y, op.trace - op.z],
        ],
        dtype=complex,
    )


def eigenvalues(op: HermitianOp2) -> tuple[float, float]:
    """Eigenvalues (trace +- r)/2, sorted descending."""
    r = op.radius
    return (0.5 * (op.trace + r), 0.5 * (op.trace - r))


def trace_norm(op: HermitianOp2) -> float:
    """Trace norm |phi_+| + |phi_-|.

    Equals |trace| when r^2 <= trace^2 (det >= 0, eigenvalues share a
    sign) and r otherwise.
    """
    r = op.radius
    if r <= abs(op.trace):
        return abs(op.trace)
    return r
