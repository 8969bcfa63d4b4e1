"""Decay of structurally damped sigma-evolution equations on spectral grids."""
__version__ = "0.1.0"

from .model import (ModelParams, MultiplierValue, ParameterError, RootPair,
                    characteristic_roots, multiplier, ode_residual, validate_params)
from .grid import GridSpec, RealField, SpectralField, forward_transform, inverse_transform
from .evolution import Propagator, evolve
from .rates import Family, RateQuery, RateResult, Term, critical_exponent, rate
from .inequalities import PittParams, pitt_admissible, pitt_ratio

__all__ = [
    "ModelParams", "MultiplierValue", "ParameterError", "RootPair", "characteristic_roots",
    "multiplier", "ode_residual", "validate_params", "GridSpec", "RealField", "SpectralField",
    "forward_transform", "inverse_transform", "Propagator", "evolve", "Family", "RateQuery",
    "RateResult", "Term", "critical_exponent", "rate", "PittParams", "pitt_admissible",
    "pitt_ratio",
]
