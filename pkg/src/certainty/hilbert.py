"""Finite-dimensional complex Hilbert space: states, observables, evolution.

Every object here is immutable once built. Functions accept either the wrapper
types or plain numpy arrays, so quick experiments do not need ceremony.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

__all__ = [
    "ConvergenceError",
    "DimensionMismatchError",
    "EigenSystem",
    "HermitianOperator",
    "NotHermitianError",
    "PlanckScale",
    "StateVector",
    "diagonalize",
    "evolve",
    "expectation",
    "hbar_of",
    "inner",
    "jacobi_eigh",
    "spectral_weights",
    "std_dev",
    "unitary",
]

HERMITIAN_ATOL = 1e-12
NORM_ATOL = 1e-12


class DimensionMismatchError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class PlanckScale:
    """Value of the reduced Planck constant used by the group action."""

    hbar: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.hbar) and self.hbar > 0):
            raise ValueError(f"hbar must be a positive finite real, got {self.hbar!r}")


UNIT_SCALE = PlanckScale(1.0)

ScaleLike = Union[PlanckScale, float, int]


def hbar_of(scale: ScaleLike) -> float:
    if isinstance(scale, PlanckScale):
        return scale.hbar
    return PlanckScale(float(scale)).hbar


class StateVector:
    """Unit-norm pure state.

    ``normalize=False`` insists that the input is already normalized (to
    ``NORM_ATOL``) instead of silently rescaling it.
    """

    __slots__ = ("_amps",)

    def __init__(self, amplitudes, *, normalize: bool = True):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.size < 2:
            raise ValueError("a state needs dimension >= 2")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("the zero vector is not a state")
        if normalize:
            amps = amps / norm
        elif abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized (norm={norm!r})")
        amps.flags.writeable = False
        self._amps = amps

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def random(cls, dim: int, rng: np.random.Generator) -> "StateVector":
        """Haar-random state (normalized complex Gaussian vector)."""
        return cls(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def dim(self) -> int:
        return self._amps.size

    def with_phase(self, theta: float) -> "StateVector":
        return StateVector(np.exp(1j * theta) * self._amps, normalize=False)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._amps
        return self._amps.astype(dtype)

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"StateVector(dim={self.dim})"


class HermitianOperator:
    """Self-adjoint matrix.

    The input is validated against ``A == A^H`` (relative to ``max(1, |A|_max)``)
    and then symmetrized so that downstream code sees an exactly Hermitian
    array. The eigensystem is computed lazily and cached.
    """

    def __init__(self, matrix, *, atol: float = HERMITIAN_ATOL, label: str | None = None):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
        asym = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if asym > atol * scale:
            raise NotHermitianError(f"matrix is not Hermitian (max |A - A^H| = {asym:.3e})")
        m = 0.5 * (m + m.conj().T)
        m.flags.writeable = False
        self._m = m
        self.label = label

    @classmethod
    def from_spectrum(cls, values, vectors, *, label: str | None = None) -> "HermitianOperator":
        """Build ``V diag(values) V^H`` and seed the cached eigensystem."""
        values = np.asarray(values, dtype=float)
        vectors = np.asarray(vectors, dtype=complex)
        op = cls((vectors * values) @ vectors.conj().T, label=label)
        op.__dict__["eigensystem"] = _canonical(values, vectors)
        return op

    @classmethod
    def zeros(cls, dim: int) -> "HermitianOperator":
        return cls(np.zeros((dim, dim)))

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    @cached_property
    def eigensystem(self) -> "EigenSystem":
        return diagonalize(self)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._m
        return self._m.astype(dtype)

    def __add__(self, other):
        if not isinstance(other, HermitianOperator):
            return NotImplemented
        _check_dims(self.dim, other.dim)
        return HermitianOperator(self._m + other._m)

    def __sub__(self, other):
        if not isinstance(other, HermitianOperator):
            return NotImplemented
        _check_dims(self.dim, other.dim)
        return HermitianOperator(self._m - other._m)

    def __neg__(self):
        return HermitianOperator(-self._m)

    def __mul__(self, c):
        c = float(c)
        return HermitianOperator(c * self._m)

    __rmul__ = __mul__

    def __repr__(self):
        tag = f", label={self.label!r}" if self.label else ""
        return f"HermitianOperator(dim={self.dim}{tag})"


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def _amps(x) -> np.ndarray:
    if isinstance(x, StateVector):
        return x.amplitudes
    return np.asarray(x, dtype=complex).reshape(-1)


def _mat(x) -> np.ndarray:
    if isinstance(x, HermitianOperator):
        return x.matrix
    return np.asarray(x, dtype=complex)


def _as_operator(x) -> HermitianOperator:
    return x if isinstance(x, HermitianOperator) else HermitianOperator(x)


def _check_dims(n: int, m: int):
    if n != m:
        raise DimensionMismatchError(f"dimension mismatch: {n} vs {m}")


def inner(a, b) -> complex:
    """``<a|b>``, conjugate-linear in the first argument."""
    a, b = _amps(a), _amps(b)
    _check_dims(a.size, b.size)
    return complex(np.vdot(a, b))


def expectation(A, psi) -> float:
    A = _as_operator(A)
    v = _amps(psi)
    _check_dims(A.dim, v.size)
    return float(np.vdot(v, A.matrix @ v).real)


def std_dev(A, psi) -> float:
    """Standard deviation ``<(A - <A>)^2>^(1/2)`` in the state ``psi``.

    Evaluated as ``||(A - <A>) psi||``, which stays accurate for near-eigenstates
    where ``<A^2> - <A>^2`` would cancel catastrophically.
    """
    A = _as_operator(A)
    v = _amps(psi)
    _check_dims(A.dim, v.size)
    av = A.matrix @ v
    mean = np.vdot(v, av).real
    return float(np.linalg.norm(av - mean * v))


# -- eigensolvers -----------------------------------------------------------


def _canonical(values: np.ndarray, vectors: np.ndarray) -> EigenSystem:
    """Sort ascending and fix the phase of every eigenvector.

    The largest-magnitude component of each column is made real-positive; ties
    go to the lowest index (``argmax`` returns the first maximum).
    """
    order = np.argsort(values, kind="stable")
    values = np.asarray(values, dtype=float)[order]
    vectors = np.array(vectors, dtype=complex)[:, order]
    if vectors.size:
        pivot = np.argmax(np.abs(vectors), axis=0)
        lead = vectors[pivot, np.arange(vectors.shape[1])]
        vectors = vectors * (np.abs(lead) / lead)
    values.flags.writeable = False
    vectors.flags.writeable = False
    return EigenSystem(values, vectors)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint index pairs covering every (p, q) once per sweep.

    Classic circle scheduling; an odd size gets a dummy player that sits out.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(A, *, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each sweep visits every off-diagonal pair once in a fixed round-robin
    order; pairs within one round are disjoint and are rotated together.
    Iteration stops when the off-diagonal Frobenius norm drops below
    ``tol * ||A||_F``.

    Returns unsorted ``(values, vectors)``; :func:`diagonalize` canonicalizes.
    """
    a = np.array(_mat(A), dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    fro = np.linalg.norm(a)
    if n < 2 or fro == 0:
        return np.real(np.diag(a)).copy(), v
    target = tol * fro
    rounds = _round_robin(n)
    diag_mask = np.eye(n, dtype=bool)

    for _ in range(max_sweeps):
        if np.linalg.norm(np.where(diag_mask, 0, a)) <= target:
            break
        for P, Q in rounds:
            apq = a[P, Q]
            mag = np.abs(apq)
            active = mag > 1e-300
            if not np.any(active):
                continue
            P, Q, apq, mag = P[active], Q[active], apq[active], mag[active]
            app = a[P, P].real
            aqq = a[Q, Q].real
            theta = (aqq - app) / (2.0 * mag)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ph = np.conj(apq) / mag  # exp(-i arg a_pq)
            g00, g01, g10, g11 = c, s, -s * ph, c * ph

            cp, cq = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = cp * g00 + cq * g10
            a[:, Q] = cp * g01 + cq * g11
            rp, rq = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = np.conj(g00)[:, None] * rp + np.conj(g10)[:, None] * rq
            a[Q, :] = np.conj(g01)[:, None] * rp + np.conj(g11)[:, None] * rq
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            a[P, P] = a[P, P].real
            a[Q, Q] = a[Q, Q].real

            vp, vq = v[:, P].copy(), v[:, Q].copy()
            v[:, P] = vp * g00 + vq * g10
            v[:, Q] = vp * g01 + vq * g11
    else:
        if np.linalg.norm(np.where(diag_mask, 0, a)) > target:
            raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.real(np.diag(a)).copy(), v


def diagonalize(A, *, method: str = "lapack") -> EigenSystem:
    """Eigendecomposition with a canonical ordering and phase convention.

    ``method="lapack"`` calls ``numpy.linalg.eigh``; ``method="jacobi"`` runs
    the in-house cyclic Jacobi solver. Both return the same canonical form, so
    spectral projectors built from either agree.
    """
    m = _mat(A)
    if not isinstance(A, HermitianOperator):
        m = HermitianOperator(m).matrix
    if method == "lapack":
        try:
            w, vec = np.linalg.eigh(m)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(str(exc)) from exc
    elif method == "jacobi":
        w, vec = jacobi_eigh(m)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return _canonical(w, vec)


# -- dynamics ---------------------------------------------------------------


def spectral_weights(A, psi) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of ``A`` and the components ``V^H psi`` of ``psi`` in its eigenbasis."""
    A = _as_operator(A)
    v = _amps(psi)
    _check_dims(A.dim, v.size)
    es = A.eigensystem
    return es.values, es.vectors.conj().T @ v


def evolve(A, ds: float, psi, scale: ScaleLike = UNIT_SCALE) -> StateVector:
    """Apply ``exp(-i ds A / hbar)`` to ``psi`` through the eigenbasis of ``A``."""
    A = _as_operator(A)
    hbar = hbar_of(scale)
    v = _amps(psi)
    _check_dims(A.dim, v.size)
    if ds == 0:
        return psi if isinstance(psi, StateVector) else StateVector(v)
    es = A.eigensystem
    coeff = es.vectors.conj().T @ v
    out = es.vectors @ (np.exp(-1j * ds * es.values / hbar) * coeff)
    return StateVector(out)


def unitary(A, ds: float, scale: ScaleLike = UNIT_SCALE) -> np.ndarray:
    """Dense matrix of ``exp(-i ds A / hbar)``."""
    A = _as_operator(A)
    es = A.eigensystem
    return (es.vectors * np.exp(-1j * ds * es.values / hbar_of(scale))) @ es.vectors.conj().T
