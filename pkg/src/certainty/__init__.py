"""Quantum-angle geometry and numerical checks of certainty and uncertainty relations."""

from .constants import CORRECTION_ANGLE, GAUSSIAN_QUANTILE, RATIO_BOUND, SUBSTANTIAL_ANGLE, TAIL_PROBABILITY
from .geometry import quantum_angle, stable_angle, triangle_check
from .hilbert import (
    ConvergenceError,
    DimensionMismatchError,
    EigenSystem,
    HermitianOperator,
    NotHermitianError,
    PlanckScale,
    StateVector,
    diagonalize,
    evolve,
    expectation,
    inner,
    std_dev,
)
from .relations import (
    RELATIONS,
    judge,
    kennard,
    mandelshtam_tamm_closed,
    mandelshtam_tamm_driven,
    ratio_check,
    uncertainty_angle,
    uncertainty_xp,
)
from .reports import RatioReport, RelationReport
from .spectral import SpectralMeasure, circle_uncertainty, line_uncertainty
from .unitary import certainty_report, min_substantial_parameter

__version__ = "0.1.0"

__all__ = [
    "CORRECTION_ANGLE",
    "ConvergenceError",
    "DimensionMismatchError",
    "EigenSystem",
    "GAUSSIAN_QUANTILE",
    "HermitianOperator",
    "NotHermitianError",
    "PlanckScale",
    "RATIO_BOUND",
    "RELATIONS",
    "RatioReport",
    "RelationReport",
    "SUBSTANTIAL_ANGLE",
    "SpectralMeasure",
    "StateVector",
    "TAIL_PROBABILITY",
    "certainty_report",
    "circle_uncertainty",
    "diagonalize",
    "evolve",
    "expectation",
    "inner",
    "judge",
    "kennard",
    "line_uncertainty",
    "mandelshtam_tamm_closed",
    "mandelshtam_tamm_driven",
    "min_substantial_parameter",
    "quantum_angle",
    "ratio_check",
    "stable_angle",
    "std_dev",
    "triangle_check",
    "uncertainty_angle",
    "uncertainty_xp",
]
