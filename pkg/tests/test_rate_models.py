import math

import numpy as np
import pytest

from pdiv.divisibility import cp_margin, p_margin_rates, verdict
from pdiv.dynmap import RateSample, instantaneous_fixed_point
from pdiv.rate_models import (
    TabulatedRates,
    constant_rates,
    eternal_nm,
    lossy_cavity,
    lossy_cavity_model,
)


def test_eternal_nm_values():
    s = eternal_nm(0.0)
    assert (s.gamma_plus, s.gamma_minus, s.Gamma, s.omega) == (2.0, 0.0, 1.0, 0.0)
    assert eternal_nm(50.0).Gamma == pytest.approx(0.0, abs=1e-15)
    assert eternal_nm(50.0).Gamma >= 0.0
    assert instantaneous_fixed_point(eternal_nm(3.7)) == 0.0


def test_eternal_nm_never_cp_always_p():
    for t in np.linspace(0.01, 10, 200):
        v = verdict(eternal_nm(float(t)))
        assert not v.cp
        assert v.p and v.blp


def test_lossy_cavity_values():
    s = lossy_cavity(lambda t: 1.0, lambda t: 0.4, 2.0)
    assert (s.gamma_plus, s.gamma_minus, s.Gamma, s.omega) == (1.0, 1.0, 0.5, 0.2)
    assert instantaneous_fixed_point(s) == 1.0


def test_lossy_cavity_cp_iff_gamma_nonnegative():
    model = lossy_cavity_model(lambda t: math.cos(t))  # negative past pi/2
    for t in np.linspace(0.0, 3.0, 100):
        s = model(float(t))
        cp = float(cp_margin(s.gamma_plus, s.gamma_minus, s.Gamma))
        p = float(p_margin_rates(s.gamma_plus, s.gamma_minus, s.Gamma))
        if math.cos(t) >= 0:
            assert cp >= 0 and p >= 0
        else:
            assert cp < 0 and p < 0  # z_fp = 1 forces CP == P


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        eternal_nm(-0.1)
    with pytest.raises(ValueError):
        lossy_cavity(lambda t: 1.0, lambda t: 0.0, -1.0)


def make_table():
    return TabulatedRates(
        [
            (0.0, RateSample(1.0, 0.5, 0.2, 0.0, t=0.0)),
            (1.0, RateSample(3.0, 1.5, 0.6, 1.0, t=1.0)),
            (2.0, RateSample(2.0, 1.0, 0.4, 0.0, t=2.0)),
        ]
    )


def test_tabulated_exact_on_knots():
    table = make_table()
    s = table(1.0)
    assert (s.gamma_plus, s.gamma_minus, s.Gamma, s.omega) == (3.0, 1.5, 0.6, 1.0)


def test_tabulated_midpoint_average():
    table = make_table()
    s = table(0.5)
    assert s.gamma_plus == pytest.approx(2.0)
    assert s.gamma_minus == pytest.approx(1.0)
    assert s.Gamma == pytest.approx(0.4)
    assert s.omega == pytest.approx(0.5)


def test_tabulated_bounded_between_knots():
    table = make_table()
    for t in np.linspace(0.0, 1.0, 37):
        s = table(float(t))
        assert 1.0 - 1e-12 <= s.gamma_plus <= 3.0 + 1e-12


def test_tabulated_single_knot():
    table = TabulatedRates([(0.5, RateSample(1.0, 0.0, 0.3, 0.0, t=0.5))])
    assert table(0.5).gamma_plus == 1.0
    with pytest.raises(ValueError):
        table(0.6)


def test_tabulated_out_of_range():
    table = make_table()
    with pytest.raises(ValueError):
        table(-0.1)
    with pytest.raises(ValueError):
        table(2.1)


def test_tabulated_rejects_unsorted():
    with pytest.raises(ValueError):
        TabulatedRates(
            [
                (1.0, RateSample(1, 0, 0, 0, t=1.0)),
                (0.5, RateSample(1, 0, 0, 0, t=0.5)),
            ]
        )
    with pytest.raises(ValueError):
        TabulatedRates([])


def test_tabulated_from_csv(tmp_path):
    path = tmp_path / "rates.csv"
    path.write_text(
        "# time unit: dimensionless\n"
        "t,gamma_plus,gamma_minus,Gamma,omega,cp,p,blp,"
        "margin_cp,margin_p1,margin_p2,margin_blp,divergent\n"
        "0.0,1.0,0.5,0.2,0.0,1,1,1,0.1,0.5,0.2,0.2,0\n"
        "1.0,3.0,1.5,0.6,1.0,0,1,1,-1.8,1.5,5.4,0.6,0\n"
    )
    table = TabulatedRates.from_csv(path)
    assert table(0.0).gamma_plus == 1.0
    assert table(0.5).gamma_minus == pytest.approx(1.0)


def test_tabulated_from_csv_missing_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,gamma_plus\n0.0,1.0\n")
    with pytest.raises(ValueError, match="missing columns"):
        TabulatedRates.from_csv(path)


def test_tabulated_divergent_rows_poison_queries(tmp_path):
    path = tmp_path / "div.csv"
    path.write_text(
        "t,gamma_plus,gamma_minus,Gamma,omega,divergent\n"
        "0.0,1.0,0.5,0.2,0.0,0\n"
        "1.0,,,,,1\n"
        "2.0,2.0,1.0,0.4,0.0,0\n"
    )
    table = TabulatedRates.from_csv(path)
    assert table(0.0).finite
    assert table(1.0).divergent
    assert table(1.5).divergent
    assert table(0.5).divergent


def test_constant_rates():
    model = constant_rates(2.0, 0.5, 1.0, 0.3)
    s = model(4.2)
    assert (s.gamma_plus, s.gamma_minus, s.Gamma, s.omega, s.t) == (2.0, 0.5, 1.0, 0.3, 4.2)
