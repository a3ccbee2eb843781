"""Quantum angle (Fubini-Study distance between rays) and angular speed."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hilbert import (
    UNIT_SCALE,
    ScaleLike,
    StateVector,
    _amps,
    _check_dims,
    evolve,
    hbar_of,
    std_dev,
)
from .reports import RelationReport

__all__ = [
    "AngleSample",
    "VelocitySplit",
    "angular_speed_finite_difference",
    "angular_speed_from_generator",
    "angular_speed_richardson",
    "path_angle_bound",
    "quantum_angle",
    "stable_angle",
    "triangle_check",
    "velocity_decompose",
]

_SQRT_HALF = math.sqrt(0.5)

Path = Callable[[float], StateVector]


@dataclass(frozen=True)
class VelocitySplit:
    parallel: np.ndarray
    orthogonal: np.ndarray


@dataclass(frozen=True)
class AngleSample:
    t: float
    angle: float


def _overlap_and_residual(a, b) -> tuple[float, float]:
    a, b = _amps(a), _amps(b)
    _check_dims(a.size, b.size)
    ov = np.vdot(a, b)
    return abs(ov), float(np.linalg.norm(b - a * ov))


def quantum_angle(a, b) -> float:
    """``arccos |<a|b>|`` in ``[0, pi/2]``.

    When ``|<a|b>| > 1/sqrt(2)`` (angle below pi/4) the arccos is ill-conditioned,
    so the equivalent ``arcsin ||b - a<a|b>||`` is used instead.
    """
    a, b = _amps(a), _amps(b)
    _check_dims(a.size, b.size)
    if a is b or np.array_equal(a, b):
        return 0.0
    ov = np.vdot(a, b)
    m = abs(ov)
    if m <= _SQRT_HALF:
        return math.acos(min(m, 1.0))
    return math.asin(min(float(np.linalg.norm(b - a * ov)), 1.0))


def stable_angle(a, b) -> float:
    """Quantum angle from the orthogonal residual ``b - a<a|b>``.

    For unit vectors ``||b - a<a|b>||^2 + |<a|b>|^2 = 1``, so
    ``atan2(residual, overlap)`` equals ``arcsin(residual)`` while keeping full
    relative precision for tiny angles and near pi/2 alike.
    """
    a, b = _amps(a), _amps(b)
    _check_dims(a.size, b.size)
    if a is b or np.array_equal(a, b):
        return 0.0
    m, res = _overlap_and_residual(a, b)
    return math.atan2(res, m)


def velocity_decompose(r, v) -> VelocitySplit:
    """Split a velocity into the part along ``r`` and the part orthogonal to it."""
    r, v = _amps(r), np.asarray(v, dtype=complex).reshape(-1)
    _check_dims(r.size, v.size)
    par = r * np.vdot(r, v)
    return VelocitySplit(par, v - par)


def angular_speed_from_generator(A, psi, scale: ScaleLike = UNIT_SCALE) -> float:
    """Angular speed along ``exp(-i s A / hbar) psi``: ``std_dev(A, psi) / hbar``."""
    return std_dev(A, psi) / hbar_of(scale)


def angular_speed_finite_difference(path: Path, t: float, h: float) -> float:
    """Central-difference estimate ``angle(path(t+h), path(t-h)) / (2h)``."""
    if not h > 0:
        raise ValueError("step h must be positive")
    return stable_angle(path(t + h), path(t - h)) / (2.0 * h)


def angular_speed_richardson(path: Path, t: float, h: float = 1e-3, ratio: float = 10.0) -> float:
    """Richardson extrapolation of two central differences at ``h`` and ``h/ratio``.

    The central estimate has an even error expansion in ``h``, so one
    extrapolation step removes the ``h^2`` term.
    """
    coarse = angular_speed_finite_difference(path, t, h)
    fine = angular_speed_finite_difference(path, t, h / ratio)
    r2 = ratio * ratio
    return (r2 * fine - coarse) / (r2 - 1.0)


def triangle_check(a, b, c) -> float:
    """Signed slack ``angle(a,b) + angle(b,c) - angle(a,c)``; never negative in exact arithmetic."""
    return quantum_angle(a, b) + quantum_angle(b, c) - quantum_angle(a, c)


def path_angle_bound(psi, A, ds: float, scale: ScaleLike = UNIT_SCALE, *, tol: float = 1e-10) -> RelationReport:
    """Compare the angle travelled along a group orbit with ``|ds| * std_dev / hbar``.

    The report is oriented so that the inequality reads ``lhs >= rhs``:
    ``lhs`` is the speed-limit bound and ``rhs`` the measured angle.
    """
    hbar = hbar_of(scale)
    angle = quantum_angle(evolve(A, ds, psi, scale), psi)
    bound = abs(ds) * std_dev(A, psi) / hbar
    return RelationReport(
        "path_angle_bound",
        bound,
        angle,
        tol,
        context={"ds": ds, "angle": angle, "bound": bound, "hbar": hbar},
    )
