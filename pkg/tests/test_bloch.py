import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pdiv.bloch import HermitianOp2, eigenvalues, from_bloch, to_bloch, trace_norm

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def test_to_bloch_maximally_mixed():
    op = to_bloch(0.5 * np.eye(2))
    assert op == HermitianOp2(trace=1.0, x=0.0, y=0.0, z=0.0)


def test_to_bloch_ground_projector():
    op = to_bloch(np.diag([1.0, 0.0]))
    assert op == HermitianOp2(trace=1.0, x=0.0, y=0.0, z=1.0)


def test_to_bloch_sigma_x():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert to_bloch(sx) == HermitianOp2(trace=0.0, x=2.0, y=0.0, z=0.0)


def test_to_bloch_rejects_non_hermitian():
    with pytest.raises(ValueError):
        to_bloch(np.array([[0, 1], [0, 0]], dtype=complex))


def test_from_bloch_examples():
    assert np.allclose(from_bloch(HermitianOp2(1, 0, 0, 0)), 0.5 * np.eye(2))
    assert np.allclose(from_bloch(HermitianOp2(1, 0, 0, 1)), np.diag([1.0, 0.0]))
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(from_bloch(HermitianOp2(0, 2, 0, 0)), sx)


def test_trace_norm_examples():
    # sigma_z in Bloch form has eigenvalues +-1
    assert trace_norm(HermitianOp2(0, 0, 0, 2)) == 2.0
    # any density operator has trace norm 1
    assert trace_norm(HermitianOp2(1, 0.3, 0.4, 0.5)) == 1.0


def test_trace_norm_indefinite_operator_matches_eigen_oracle():
    # trace 1, r^2 = 2: one negative eigenvalue, norm = r = sqrt(2)
    op = HermitianOp2(1, 1.0, 0.0, 1.0)
    evals = np.linalg.eigvalsh(from_bloch(op))
    assert trace_norm(op) == pytest.approx(np.abs(evals).sum(), abs=1e-12)
    assert trace_norm(op) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_eigenvalue_examples():
    assert eigenvalues(HermitianOp2(1, 0, 0, 0)) == (0.5, 0.5)
    assert eigenvalues(HermitianOp2(1, 0, 0, 1)) == (1.0, 0.0)
    assert eigenvalues(HermitianOp2(0, 0, 0, 2)) == (1.0, -1.0)


@given(trace=finite, x=finite, y=finite, z=finite)
def test_round_trip(trace, x, y, z):
    op = HermitianOp2(trace, x, y, z)
    back = to_bloch(from_bloch(op))
    scale = max(1.0, abs(trace), abs(x), abs(y), abs(z))
    tol = 4 * np.finfo(float).eps * scale
    assert abs(back.trace - trace) <= tol
    assert abs(back.x - x) <= tol
    assert abs(back.y - y) <= tol
    assert abs(back.z - z) <= tol


@given(trace=finite, x=finite, y=finite, z=finite)
def test_trace_norm_dominates_trace_and_eigen_sum_rules(trace, x, y, z):
    op = HermitianOp2(trace, x, y, z)
    assert trace_norm(op) >= abs(trace)
    hi, lo = eigenvalues(op)
    assert hi + lo == pytest.approx(trace, rel=1e-12, abs=1e-9)
    assert hi - lo == pytest.approx(op.radius, rel=1e-12, abs=1e-9)


def test_trace_norm_matches_eigen_oracle_bulk():
    rng = np.random.default_rng(7)
    vals = rng.uniform(-5, 5, size=(10_000, 4))
    for trace, x, y, z in vals:
        op = HermitianOp2(trace, x, y, z)
        evals = np.linalg.eigvalsh(from_bloch(op))
        assert abs(trace_norm(op) - np.abs(evals).sum()) < 1e-12 * max(
            1.0, np.abs(evals).sum()
        )
