"""Unitary group actions: the certainty relation, substantial-change search,
and propagation under time-dependent Hamiltonians."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .constants import SUBSTANTIAL_ANGLE
from .geometry import quantum_angle
from .hilbert import (
    UNIT_SCALE,
    DimensionMismatchError,
    HermitianOperator,
    NotHermitianError,
    ScaleLike,
    StateVector,
    _amps,
    _as_operator,
    _check_dims,
    evolve,
    hbar_of,
    spectral_weights,
    std_dev,
)
from .reports import INAPPLICABLE, RelationReport, relation_tolerance

__all__ = [
    "DrivenHamiltonian",
    "GeneratorSet",
    "LogCoordinates",
    "Trajectory",
    "certainty_report",
    "combined_generator",
    "min_substantial_parameter",
    "multi_certainty_report",
    "orbit_angles",
    "propagate_driven",
    "rk4_step",
]


@dataclass(frozen=True)
class GeneratorSet:
    generators: tuple[HermitianOperator, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        gens = tuple(_as_operator(g) for g in self.generators)
        if not gens:
            raise ValueError("empty generator set")
        for g in gens[1:]:
            _check_dims(gens[0].dim, g.dim)
        labels = tuple(self.labels) or tuple(f"A{j + 1}" for j in range(len(gens)))
        if len(labels) != len(gens):
            raise ValueError("one label per generator")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class LogCoordinates:
    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("logarithmic coordinates must be finite")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)


def combined_generator(gs: GeneratorSet, delta) -> HermitianOperator:
    """Contraction ``sum_j delta_j A_j``."""
    values = delta.values if isinstance(delta, LogCoordinates) else tuple(delta)
    if len(values) != len(gs):
        raise DimensionMismatchError(f"{len(values)} coordinates for {len(gs)} generators")
    m = sum(float(d) * g.matrix for d, g in zip(values, gs.generators))
    return HermitianOperator(m)


def certainty_report(
    psi,
    A,
    ds: float,
    scale: ScaleLike = UNIT_SCALE,
    *,
    threshold: float = SUBSTANTIAL_ANGLE,
    relation_id: str = "certainty",
) -> RelationReport:
    """Evaluate ``|ds| * std_dev(A) >= hbar`` for one group element.

    The inequality is a necessary condition for a substantial change, so it is
    only asserted when the measured angle reaches ``threshold``; other cases
    are reported as inapplicable.
    """
    A = _as_operator(A)
    hbar = hbar_of(scale)
    angle = quantum_angle(evolve(A, ds, psi, scale), psi)
    spread = std_dev(A, psi)
    substantial = angle >= threshold
    lhs = abs(ds) * spread
    return RelationReport(
        relation_id,
        lhs,
        hbar,
        relation_tolerance(hbar),
        status="" if substantial else INAPPLICABLE,
        context={
            "ds": ds,
            "angle": angle,
            "substantial": substantial,
            "threshold": threshold,
            "std_dev": spread,
            "hbar": hbar,
        },
    )


def multi_certainty_report(psi, gs: GeneratorSet, delta, scale: ScaleLike = UNIT_SCALE, *, threshold: float = SUBSTANTIAL_ANGLE) -> RelationReport:
    """Certainty relation for ``exp(-i (delta . A) / hbar)``, i.e. ``std_dev(delta . A) >= hbar``."""
    values = delta.values if isinstance(delta, LogCoordinates) else tuple(float(d) for d in delta)
    report = certainty_report(psi, combined_generator(gs, values), 1.0, scale, threshold=threshold, relation_id="multi_certainty")
    report.context.update({"delta": list(values), "labels": list(gs.labels)})
    return report


def orbit_angles(A, psi, params, scale: ScaleLike = UNIT_SCALE) -> np.ndarray:
    """Quantum angle between ``psi`` and ``exp(-i s A / hbar) psi`` for many ``s`` at once.

    Uses ``<psi|U(s)|psi> = sum_k |c_k|^2 exp(-i s lambda_k / hbar)``.
    """
    values, coeff = spectral_weights(A, psi)
    w = np.abs(coeff) ** 2
    s = np.asarray(params, dtype=float)
    ov = np.abs(np.exp(-1j * np.multiply.outer(s, values) / hbar_of(scale)) @ w)
    return np.arccos(np.clip(ov, 0.0, 1.0))


def min_substantial_parameter(
    psi,
    A,
    scale: ScaleLike = UNIT_SCALE,
    search_cap: float = 10.0,
    *,
    threshold: float = SUBSTANTIAL_ANGLE,
    grid: int = 1024,
    rtol: float = 1e-12,
) -> float | None:
    """Smallest ``s`` in ``(0, search_cap]`` whose orbit angle reaches ``threshold``.

    A uniform grid brackets the first crossing (the angle along an orbit is not
    monotone), then bisection narrows it. The returned value is always the
    upper end of the final bracket, so the angle there is ``>= threshold``.
    Returns ``None`` when no grid point reaches the threshold.
    """
    if not search_cap > 0:
        raise ValueError("search_cap must be positive")
    A = _as_operator(A)

    def angle(s: float) -> float:
        return quantum_angle(evolve(A, s, psi, scale), psi)

    s = search_cap * np.arange(1, grid + 1) / grid
    coarse = orbit_angles(A, psi, s, scale)
    candidates = np.flatnonzero(coarse >= threshold - 1e-9)
    for i in candidates:
        hi = float(s[i])
        if angle(hi) < threshold:
            continue
        lo = float(s[i - 1]) if i > 0 else 0.0
        while hi - lo > rtol * hi:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if angle(mid) >= threshold:
                hi = mid
            else:
                lo = mid
        return hi
    return None


# -- driven systems -----------------------------------------------------------


@dataclass(frozen=True)
class DrivenHamiltonian:
    """Time-dependent Hamiltonian ``t -> H(t)``.

    ``evaluator`` may return a :class:`HermitianOperator` or a bare matrix;
    matrices are checked for Hermiticity on every call.
    """

    evaluator: Callable[[float], object]
    dim: int
    label: str = ""

    def matrix(self, t: float) -> np.ndarray:
        h = self.evaluator(t)
        if isinstance(h, HermitianOperator):
            m = h.matrix
        else:
            m = np.asarray(h, dtype=complex)
            scale = max(1.0, float(np.max(np.abs(m))))
            if np.max(np.abs(m - m.conj().T)) > 1e-12 * scale:
                raise NotHermitianError(f"H({t!r}) is not Hermitian")
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"H({t!r}) has shape {m.shape}, expected {(self.dim, self.dim)}")
        return m

    def __call__(self, t: float) -> HermitianOperator:
        return HermitianOperator(self.matrix(t))


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # one row per time
    norm_drift: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def state(self, k: int) -> StateVector:
        return StateVector(self.states[k])

    def __len__(self):
        return len(self.times)

    def __iter__(self):
        for t, v in zip(self.times, self.states):
            yield float(t), StateVector(v)


def rk4_step(H: DrivenHamiltonian, t: float, v: np.ndarray, dt: float, hbar: float) -> np.ndarray:
    """One classical Runge-Kutta step of ``i hbar dv/dt = H(t) v`` (no renormalization)."""
    f = -1j / hbar
    k1 = f * (H.matrix(t) @ v)
    k2 = f * (H.matrix(t + 0.5 * dt) @ (v + 0.5 * dt * k1))
    k3 = f * (H.matrix(t + 0.5 * dt) @ (v + 0.5 * dt * k2))
    k4 = f * (H.matrix(t + dt) @ (v + dt * k3))
    return v + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def propagate_driven(
    H: DrivenHamiltonian,
    psi0,
    t0: float,
    t1: float,
    dt: float,
    scale: ScaleLike = UNIT_SCALE,
) -> Trajectory:
    """Fixed-step RK4 trajectory from ``t0`` to ``t1``.

    The step is shrunk to ``(t1 - t0) / ceil((t1 - t0) / dt)`` so the grid
    lands on ``t1``. The state is renormalized after every step and the raw
    norm error is kept in ``norm_drift``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if not t1 > t0:
        raise ValueError("t1 must exceed t0")
    hbar = hbar_of(scale)
    v = np.array(_amps(psi0), dtype=complex)
    _check_dims(H.dim, v.size)
    n = max(1, math.ceil((t1 - t0) / dt - 1e-9))
    h = (t1 - t0) / n
    times = t0 + h * np.arange(n + 1)
    states = np.empty((n + 1, v.size), dtype=complex)
    drift = np.empty(n)
    states[0] = v
    for k in range(n):
        v = rk4_step(H, times[k], v, h, hbar)
        norm = np.linalg.norm(v)
        drift[k] = norm - 1.0
        v = v / norm
        states[k + 1] = v
    return Trajectory(times, states, drift)
