"""Divisibility analysis of two-level open-quantum-system dynamical maps."""

from .bloch import HermitianOp2, eigenvalues, from_bloch, to_bloch, trace_norm
from .divisibility import (
    DivisibilityVerdict,
    blp_margin,
    classify_timeline,
    cp_margin,
    global_positivity,
    kossakowski_min,
    kossakowski_value,
    p_margin_components,
    p_margin_rates,
    radius_rate_max,
    trace_norm_derivative_margin,
    verdict,
)
from .dynmap import (
    IntegratedRates,
    RateSample,
    apply_map,
    instantaneous_fixed_point,
    integrate_rates,
    map_matrix,
    z_constant_ratio,
)
from .jaynes_cummings import (
    COLD_MODE,
    HOT_MODE,
    WEAK_COUPLING,
    JCCoefficients,
    JCParams,
    coefficients,
    jc_rate_model,
    jc_rates,
    jc_rates_grid,
    omega_n,
    short_time_order,
    thermal_weight,
)
from .rate_models import TabulatedRates, constant_rates, eternal_nm, lossy_cavity

__all__ = [
    "HermitianOp2",
    "to_bloch",
    "from_bloch",
    "trace_norm",
    "eigenvalues",
    "RateSample",
    "IntegratedRates",
    "integrate_rates",
    "apply_map",
    "map_matrix",
    "instantaneous_fixed_point",
    "z_constant_ratio",
    "DivisibilityVerdict",
    "cp_margin",
    "p_margin_rates",
    "p_margin_components",
    "kossakowski_value",
    "kossakowski_min",
    "radius_rate_max",
    "trace_norm_derivative_margin",
    "blp_margin",
    "global_positivity",
    "verdict",
    "classify_timeline",
    "eternal_nm",
    "lossy_cavity",
    "constant_rates",
    "TabulatedRates",
    "JCParams",
    "JCCoefficients",
    "COLD_MODE",
    "HOT_MODE",
    "WEAK_COUPLING",
    "omega_n",
    "thermal_weight",
    "coefficients",
    "jc_rates",
    "jc_rates_grid",
    "jc_rate_model",
    "short_time_order",
]

__version__ = "0.1.0"
