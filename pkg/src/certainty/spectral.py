"""Atomic spectral measures on the line and on the circle.

An observable with a discrete spectrum is represented by its distinct
eigenvalues ("atoms") and an orthonormal basis of each eigenspace. Interval
projectors use the half-open convention ``(a, b]`` so that probabilities are
additive over adjacent intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import TAIL_PROBABILITY
from .hilbert import (
    UNIT_SCALE,
    HermitianOperator,
    ScaleLike,
    _amps,
    _as_operator,
    _check_dims,
    unitary,
)

__all__ = [
    "CIRCLE",
    "LINE",
    "IntervalUncertainty",
    "SpectralMeasure",
    "circle_uncertainty",
    "interval_probability",
    "line_uncertainty",
    "measure_from_operator",
    "project",
    "shift_covariance_check",
]

LINE = "line"
CIRCLE = "circle"
TWO_PI = 2.0 * math.pi

_EDGE = 1e-12


class SpectralMeasure:
    """Projection-valued measure of an observable with finitely many atoms."""

    def __init__(self, values, bases, topology: str = LINE):
        if topology not in (LINE, CIRCLE):
            raise ValueError(f"topology must be {LINE!r} or {CIRCLE!r}")
        values = np.asarray(values, dtype=float)
        bases = tuple(np.asarray(b, dtype=complex).reshape(b.shape[0], -1) for b in bases)
        if values.ndim != 1 or len(values) != len(bases) or not len(values):
            raise ValueError("need one basis block per atom")
        if np.any(np.diff(values) <= 0):
            raise ValueError("atom values must be strictly increasing")
        if topology == CIRCLE and (values[0] < 0 or values[-1] >= TWO_PI):
            raise ValueError("circle atoms must lie in [0, 2*pi)")
        dim = bases[0].shape[0]
        if any(b.shape[0] != dim for b in bases):
            raise ValueError("basis blocks must share the Hilbert-space dimension")
        self.topology = topology
        self.values = values
        self.values.flags.writeable = False
        self.bases = bases
        self._stacked = np.hstack(bases)
        if self._stacked.shape[1] != dim:
            raise ValueError(f"atom ranks sum to {self._stacked.shape[1]}, expected {dim}")
        self._owner = np.repeat(np.arange(len(values)), [b.shape[1] for b in bases])
        self._covariance_cache: dict = {}

    @classmethod
    def from_basis(cls, values, vectors, topology: str = LINE) -> "SpectralMeasure":
        """Rank-one atoms: ``values[k]`` with eigenvector ``vectors[:, k]``.

        Values are wrapped into ``[0, 2 pi)`` for the circle and sorted.
        """
        values = np.asarray(values, dtype=float)
        vectors = np.asarray(vectors, dtype=complex)
        if topology == CIRCLE:
            values = np.mod(values, TWO_PI)
        order = np.argsort(values, kind="stable")
        return cls(values[order], [vectors[:, [k]] for k in order], topology)

    @property
    def dim(self) -> int:
        return self._stacked.shape[0]

    @property
    def ranks(self) -> np.ndarray:
        return np.array([b.shape[1] for b in self.bases])

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"SpectralMeasure({self.topology}, atoms={len(self)}, dim={self.dim})"

    def probabilities(self, psi) -> np.ndarray:
        """Weight of ``psi`` on every atom; sums to one for a unit state."""
        v = _amps(psi)
        _check_dims(self.dim, v.size)
        comp = np.abs(self._stacked.conj().T @ v) ** 2
        return np.bincount(self._owner, weights=comp, minlength=len(self))

    def mask(self, a: float, b: float) -> np.ndarray:
        """Atoms inside ``(a, b]``; on the circle the arc runs counterclockwise from ``a``."""
        if math.isnan(a) or math.isnan(b) or b < a:
            raise ValueError(f"malformed interval ({a!r}, {b!r})")
        v = self.values
        if self.topology == LINE:
            eps = _EDGE * max(1.0, abs(a) if math.isfinite(a) else 1.0, abs(b) if math.isfinite(b) else 1.0)
            return (v > a + eps) & (v <= b + eps)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValueError("circle arcs need finite endpoints")
        length = b - a
        eps = _EDGE * TWO_PI
        if length >= TWO_PI - eps:
            return np.ones(len(v), dtype=bool)
        d = np.mod(v - math.fmod(a, TWO_PI), TWO_PI)
        d = np.where(d > TWO_PI - eps, d - TWO_PI, d)
        return (d > eps) & (d <= length + eps)

    def projector(self, a: float, b: float) -> np.ndarray:
        idx = np.flatnonzero(self.mask(a, b))
        if not len(idx):
            return np.zeros((self.dim, self.dim), dtype=complex)
        B = np.hstack([self.bases[k] for k in idx])
        return B @ B.conj().T

    def atom_projector(self, k: int) -> np.ndarray:
        B = self.bases[k]
        return B @ B.conj().T

    def cells(self) -> tuple[np.ndarray, np.ndarray]:
        """Elementary intervals ``(lo_k, hi_k]`` around each atom, split at midpoints."""
        v = self.values
        n = len(v)
        if n == 1:
            if self.topology == CIRCLE:
                return np.array([v[0] - math.pi]), np.array([v[0] + math.pi])
            return np.array([v[0] - 0.5]), np.array([v[0] + 0.5])
        if self.topology == LINE:
            mids = 0.5 * (v[1:] + v[:-1])
            lo = np.concatenate([[v[0] - (mids[0] - v[0])], mids])
            hi = np.concatenate([mids, [v[-1] + (v[-1] - mids[-1])]])
            return lo, hi
        nxt = np.concatenate([v[1:], [v[0] + TWO_PI]])
        hi = 0.5 * (v + nxt)
        lo = np.concatenate([[hi[-1] - TWO_PI], hi[:-1]])
        return lo, hi


@dataclass(frozen=True)
class IntervalUncertainty:
    """Quantile interval ``(l, r)`` and its width.

    On the line the tails are the weights strictly left of ``l`` and strictly
    right of ``r``. On the circle the whole complementary arc ``(r, l + 2 pi)``
    is reported as ``right_tail`` and ``left_tail`` is zero.
    """

    l: float
    r: float
    left_tail: float
    right_tail: float
    degenerate: bool = False

    @property
    def width(self) -> float:
        return self.r - self.l


def measure_from_operator(X, topology: str = LINE, *, tol: float = 1e-9) -> SpectralMeasure:
    """Group the eigenvalues of ``X`` into atoms (clustering tolerance ``tol``)."""
    X = _as_operator(X)
    es = X.eigensystem
    values = np.array(es.values)
    vectors = es.vectors
    if topology == CIRCLE:
        values = np.mod(values, TWO_PI)
        order = np.argsort(values, kind="stable")
        values, vectors = values[order], vectors[:, order]
    scale = tol * max(1.0, float(np.max(np.abs(values))))
    groups: list[list[int]] = []
    for k, val in enumerate(values):
        if groups and val - values[groups[-1][0]] <= scale:
            groups[-1].append(k)
        else:
            groups.append([k])
    if topology == CIRCLE and len(groups) > 1 and values[groups[0][0]] + TWO_PI - values[groups[-1][-1]] <= scale:
        groups[0] = groups.pop() + groups[0]
    atoms = [float(np.mean(np.mod(values[g] - values[g[0]] + math.pi, TWO_PI) - math.pi + values[g[0]])) for g in groups]
    if topology == CIRCLE:
        atoms = [a % TWO_PI for a in atoms]
    order = np.argsort(atoms, kind="stable")
    return SpectralMeasure(np.asarray(atoms)[order], [vectors[:, groups[k]] for k in order], topology)


def interval_probability(m: SpectralMeasure, psi, a: float, b: float) -> float:
    """Expectation of the projector ``Omega_(a, b]`` in ``psi``."""
    return float(np.sum(m.probabilities(psi)[m.mask(a, b)]))


def project(m: SpectralMeasure, psi, a: float, b: float) -> np.ndarray:
    """Unnormalized ``Omega_(a, b] psi``."""
    v = _amps(psi)
    idx = np.flatnonzero(m.mask(a, b))
    out = np.zeros_like(v)
    for k in idx:
        B = m.bases[k]
        out += B @ (B.conj().T @ v)
    return out


def line_uncertainty(m: SpectralMeasure, psi, q: float = TAIL_PROBABILITY) -> IntervalUncertainty:
    """Narrowest ``(l, r)`` whose outer tails each carry at most ``q``.

    ``l`` is the largest point with weight strictly below it ``<= q`` and
    ``r`` the smallest point with weight strictly above it ``<= q``; for an
    atomic measure both land on atoms. A width of zero (one atom holding at
    least ``1 - 2q``) is flagged degenerate.
    """
    if m.topology != LINE:
        raise ValueError("line_uncertainty needs a line measure")
    if not 0.0 < q < 0.5:
        raise ValueError("q must lie in (0, 1/2)")
    p = m.probabilities(psi)
    below = np.concatenate([[0.0], np.cumsum(p)])  # below[k] = weight of atoms < v_k
    above = np.concatenate([np.cumsum(p[::-1])[::-1][1:], [0.0]])  # weight of atoms > v_k
    j = int(np.flatnonzero(below[1:] > q)[0])
    i = int(np.flatnonzero(above + p > q)[-1])
    l, r = float(m.values[j]), float(m.values[i])
    return IntervalUncertainty(l, r, float(below[j]), float(above[i]), degenerate=(i == j))


def circle_uncertainty(m: SpectralMeasure, psi, q: float = TAIL_PROBABILITY) -> IntervalUncertainty:
    """Shortest arc ``(l, r)`` whose complement carries at most ``q``.

    Candidate arcs start and end on atoms. Among arcs of equal length the one
    with the smallest ``l`` in ``[0, 2 pi)`` wins.
    """
    if m.topology != CIRCLE:
        raise ValueError("circle_uncertainty needs a circle measure")
    if not 0.0 < q < 0.5:
        raise ValueError("q must lie in (0, 1/2)")
    p = m.probabilities(psi)
    n = len(p)
    v = m.values
    cs = np.concatenate([[0.0], np.cumsum(np.concatenate([p, p]))])
    need = 1.0 - q - 1e-14
    starts = np.arange(n)
    ends = np.searchsorted(cs, cs[starts] + need, side="left")  # arc covers atoms start .. end-1
    count = np.minimum(ends - starts, n)
    last = (starts + count - 1) % n
    widths = np.mod(v[last] - v[starts], TWO_PI)
    widths = np.where(count == 1, 0.0, widths)
    best = float(np.min(widths))
    k = int(np.flatnonzero(widths <= best + 1e-12)[0])
    mass = cs[k + count[k]] - cs[k]
    l = float(v[k])
    return IntervalUncertainty(l, l + float(widths[k]), 0.0, max(0.0, 1.0 - float(mass)), degenerate=bool(count[k] == 1))


def shift_covariance_check(m: SpectralMeasure, P, delta: float, scale: ScaleLike = UNIT_SCALE) -> float:
    """Largest entry of ``e^{+i d P/hbar} Omega_(I+d) e^{-i d P/hbar} - Omega_I``.

    The test family is the elementary cell around every atom (on the line only
    cells whose shifted copy stays inside the atom range). By additivity this
    family decides covariance for every interval with cell-aligned ends.
    """
    P = _as_operator(P)
    _check_dims(m.dim, P.dim)
    hbar = float(scale.hbar) if hasattr(scale, "hbar") else float(scale)
    key = (id(P), float(delta), hbar)
    hit = m._covariance_cache.get(key)
    if hit is not None and hit[0] is P:
        return hit[1]

    W = unitary(P, delta, scale)
    lo, hi = m.cells()
    v = m.values
    worst = 0.0
    for k in range(len(m)):
        if m.topology == LINE and not (v[0] - _EDGE <= v[k] + delta <= v[-1] + _EDGE * max(1.0, abs(v[-1]))):
            continue
        a, b = lo[k] + delta, hi[k] + delta
        inside = np.flatnonzero(m.mask(a, b))
        if len(inside):
            B = np.hstack([m.bases[j] for j in inside])
            C = W.conj().T @ B
            shifted = C @ C.conj().T
        else:
            shifted = np.zeros((m.dim, m.dim), dtype=complex)
        worst = max(worst, float(np.max(np.abs(shifted - m.atom_projector(k)))))
    m._covariance_cache[key] = (P, worst)
    return worst
