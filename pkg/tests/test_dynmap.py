import math

import numpy as np
import pytest

from pdiv.bloch import HermitianOp2, from_bloch, to_bloch
from pdiv.dynmap import (
    IntegratedRates,
    RateSample,
    apply_map,
    instantaneous_fixed_point,
    integrate_rates,
    map_matrix,
    z_constant_ratio,
)
from pdiv.rate_models import constant_rates


def ir_zero():
    return IntegratedRates(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def test_integrate_constant_rates():
    rates = constant_rates(2.0, 0.0, 1.0, 0.0)
    ir = integrate_rates(rates, 1.0, 1e-3)
    assert ir.gtilde_plus == pytest.approx(2.0, abs=1e-10)
    assert ir.gtilde_minus == 0.0
    assert ir.Gtilde == pytest.approx(1.0, abs=1e-10)
    assert ir.wtilde == 0.0
    assert ir.s == 0.0  # gamma_minus = 0 forces s = 0


def test_integrate_s_closed_form():
    # constant gamma_minus = gamma_plus = g gives s(t) = 1 - exp(-g t)
    g = 1.7
    rates = constant_rates(g, g, 0.5 * g, 0.0)
    for t in (0.3, 1.0, 2.5):
        ir = integrate_rates(rates, t, 1e-3)
        assert ir.s == pytest.approx(1.0 - math.exp(-g * t), abs=1e-10)


def test_integrate_t_zero():
    ir = integrate_rates(constant_rates(1, 1, 1, 1), 0.0, 1e-3)
    assert (ir.gtilde_plus, ir.gtilde_minus, ir.Gtilde, ir.wtilde, ir.s) == (
        0.0, 0.0, 0.0, 0.0, 0.0,
    )
    assert ir.t == 0.0


def test_integrate_step_refinement():
    rates = lambda t: RateSample(2 + math.sin(3 * t), math.cos(t), 0.4 * t, 0.2, t=t)
    coarse = integrate_rates(rates, 2.0, 2e-3)
    fine = integrate_rates(rates, 2.0, 1e-3)
    for attr in ("gtilde_plus", "gtilde_minus", "Gtilde", "wtilde", "s"):
        assert abs(getattr(coarse, attr) - getattr(fine, attr)) < 1e-8


def test_integrate_flags_non_finite_rates():
    def rates(t):
        if t >= 0.5:
            return RateSample(math.inf, 0.0, 0.0, 0.0, t=t)
        return RateSample(1.0, 0.0, 0.0, 0.0, t=t)

    ir = integrate_rates(rates, 1.0, 1e-2)
    assert ir.divergent
    assert ir.divergence_time == pytest.approx(0.5, abs=1e-2)
    assert math.isnan(ir.s)


def test_integrate_rejects_bad_arguments():
    rates = constant_rates(1, 0, 1)
    with pytest.raises(ValueError):
        integrate_rates(rates, -1.0, 1e-3)
    with pytest.raises(ValueError):
        integrate_rates(rates, 1.0, 0.0)


def test_apply_map_identity_at_t0():
    q = HermitianOp2(1.0, 0.2, -0.3, 0.4)
    assert apply_map(ir_zero(), q) == q


def test_apply_map_constant_rate_z_decay():
    # gamma_plus = 2, Gamma = 1, gamma_minus = 0
    for t in (0.1, 0.7, 2.0):
        ir = IntegratedRates(2 * t, 0.0, t, 0.0, 0.0, t)
        out = apply_map(ir, HermitianOp2(1, 0, 0, 0.8))
        assert out.z == pytest.approx(0.8 * math.exp(-2 * t), rel=1e-12)
        assert out.trace == 1.0


def test_apply_map_pure_contraction():
    ir = IntegratedRates(0.0, 0.0, math.log(2.0), 0.0, 0.0, 1.0)
    out = apply_map(ir, HermitianOp2(0, 0.6, 0, 0))
    assert out.x == pytest.approx(0.3, rel=1e-12)
    assert out.y == pytest.approx(0.0, abs=1e-15)
    assert out.z == 0.0


def test_map_matrix_identity():
    assert np.allclose(map_matrix(ir_zero()), np.eye(4), atol=1e-15)


def test_map_matrix_first_column():
    ir = IntegratedRates(math.log(2.0), 0.0, 0.0, 0.0, 0.25, 1.0)
    m = map_matrix(ir)
    assert np.allclose(m[:, 0], [0.875, 0, 0, 0.125], atol=1e-15)


def test_map_matrix_consistent_with_apply_map():
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        gp, gm, G, w, s = rng.uniform(-1.5, 1.5, 5)
        ir = IntegratedRates(gp, gm, G, w, s, 1.0)
        q = HermitianOp2(*rng.uniform(-2, 2, 4))
        vec = from_bloch(q).reshape(4, order="C")
        via_matrix = (map_matrix(ir) @ vec).reshape(2, 2)
        direct = from_bloch(apply_map(ir, q))
        assert np.abs(via_matrix - direct).max() < 1e-12


def test_trace_preserved_exactly():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        ir = IntegratedRates(*rng.uniform(-1, 1, 5), 1.0)
        q = HermitianOp2(*rng.uniform(-3, 3, 4))
        assert apply_map(ir, q).trace == q.trace


def test_instantaneous_fixed_point():
    assert instantaneous_fixed_point(RateSample(2.0, 0.0, 1.0, 0.0)) == 0.0
    # lossy cavity: gamma_minus = gamma_plus > 0
    assert instantaneous_fixed_point(RateSample(1.3, 1.3, 0.65, 0.0)) == 1.0
    assert instantaneous_fixed_point(RateSample(0.0, 0.5, 1.0, 0.0)) is None


def test_fixed_point_annihilates_bloch_generator():
    rng = np.random.default_rng(5)
    for _ in range(200):
        gp, gm, G, w = rng.uniform(-2, 2, 4)
        if gp == 0:
            continue
        rs = RateSample(gp, gm, G, w)
        z_fp = instantaneous_fixed_point(rs)
        # Bloch RHS at (0, 0, z_fp)
        dx = -G * 0.0 + w * 0.0
        dy = -w * 0.0 - G * 0.0
        dz = -gp * z_fp + gm
        assert (dx, dy) == (0.0, 0.0)
        assert abs(dz) < 1e-15 * max(1.0, abs(gm))


def test_z_constant_ratio():
    assert z_constant_ratio(0.3, 0.3, 5.0) == pytest.approx(0.3)
    assert z_constant_ratio(0.9, -0.2, 0.0) == pytest.approx(0.9)
    assert z_constant_ratio(1.0, 0.0, math.log(2.0)) == pytest.approx(0.5, rel=1e-12)


def test_z_constant_ratio_matches_integrated_map():
    # smooth rates with a fixed ratio gamma_minus / gamma_plus = 0.5
    ratio = 0.5
    rates = lambda t: RateSample(
        2.0 + math.sin(t), ratio * (2.0 + math.sin(t)), 1.0, 0.0, t=t
    )
    z0 = -0.4
    for t in (0.5, 1.5, 3.0):
        ir = integrate_rates(rates, t, 1e-3)
        via_map = apply_map(ir, HermitianOp2(1, 0, 0, z0)).z
        closed = z_constant_ratio(z0, ratio, ir.gtilde_plus)
        assert abs(via_map - closed) < 1e-8
        # s(t) = z_fp (1 - exp(-gtilde_plus)) under a constant ratio
        assert abs(ir.s - ratio * (1 - math.exp(-ir.gtilde_plus))) < 1e-8


def test_diagonal_rates_reconstruction():
    rs = RateSample(gamma_plus=2.0, gamma_minus=0.6, Gamma=1.4, omega=0.0)
    g1, g2, g3 = rs.diagonal_rates()
    assert g1 == pytest.approx(1.3)
    assert g2 == pytest.approx(0.7)
    assert g3 == pytest.approx(1.4 - 1.0)
