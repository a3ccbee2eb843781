"""Concrete finite systems whose generators shift or rotate a spectral measure exactly.

* ``LatticeSystem``: ``N`` sites on a ring of length ``L``; ``P`` is the
  discrete-Fourier momentum, so ``exp(-i a P / hbar)`` is the one-site shift.
* ``RotorSystem``: angular momentum ``|m| <= m_max`` with the conjugate angle
  grid ``2 pi k / (2 m_max + 1)``.
* ``SpinSystem``: spin-``j`` matrices.
* ``RabiDrive``: a two-level atom in a classical oscillating field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hilbert import UNIT_SCALE, HermitianOperator, ScaleLike, StateVector, hbar_of
from .spectral import CIRCLE, LINE, SpectralMeasure
from .unitary import DrivenHamiltonian, GeneratorSet

__all__ = [
    "LatticeSystem",
    "Lattice2D",
    "RabiDrive",
    "RotorSystem",
    "SpinSystem",
    "bimodal_packet",
    "gaussian_packet",
    "gaussian_packet_2d",
    "make_lattice",
    "make_lattice_2d",
    "make_rabi",
    "make_rotor",
    "make_spin",
    "random_localized_state",
    "rotor_eigenstate",
    "rotor_superposition",
    "spin_coherent_state",
    "two_level",
    "von_mises_state",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


# -- lattice -----------------------------------------------------------------


@dataclass(frozen=True)
class LatticeSystem:
    N: int
    L: float
    X: HermitianOperator
    P: HermitianOperator
    X_measure: SpectralMeasure
    sites: np.ndarray
    wavenumbers: np.ndarray
    hbar: float = 1.0

    @property
    def spacing(self) -> float:
        return self.L / self.N

    @property
    def dim(self) -> int:
        return self.N

    def shift_matrix(self, steps: int = 1) -> np.ndarray:
        """Cyclic permutation moving amplitude ``steps`` sites toward larger ``x``."""
        return np.roll(np.eye(self.N, dtype=complex), steps, axis=0)


def _signed_wavenumbers(N: int, L: float) -> np.ndarray:
    # -floor(N/2) .. ceil(N/2) - 1; for even N the Nyquist mode sits on the negative side
    return (np.arange(N) - N // 2) * (2.0 * math.pi / L)


def make_lattice(N: int, L: float, scale: ScaleLike = UNIT_SCALE) -> LatticeSystem:
    if N < 8:
        raise ValueError("lattice needs at least 8 sites")
    if not L > 0:
        raise ValueError("length must be positive")
    hbar = hbar_of(scale)
    a = L / N
    x = (np.arange(N) - N // 2) * a
    k = _signed_wavenumbers(N, L)
    F = np.exp(1j * np.outer(x, k)) / math.sqrt(N)
    X = HermitianOperator.from_spectrum(x, np.eye(N), label="X")
    P = HermitianOperator.from_spectrum(hbar * k, F, label="P")
    return LatticeSystem(N, float(L), X, P, SpectralMeasure.from_basis(x, np.eye(N), LINE), x, k, hbar)


def gaussian_packet(sys: LatticeSystem, x0: float = 0.0, p0: float = 0.0, sigma: float = 1.0) -> StateVector:
    """``psi_j ~ exp(-(x_j - x0)^2 / (4 sigma^2) + i p0 x_j / hbar)``.

    ``sigma`` is the position standard deviation of the continuum packet.
    """
    if not 4 * sigma < sys.L / 2:
        raise ValueError("packet too wide for the ring (need 4 sigma < L/2)")
    if sigma < 3 * sys.spacing:
        raise ValueError("packet not resolved (need sigma >= 3 lattice spacings)")
    x = sys.sites
    return StateVector(np.exp(-((x - x0) ** 2) / (4 * sigma**2) + 1j * p0 * x / sys.hbar))


def bimodal_packet(
    sys: LatticeSystem,
    separation: float,
    weight: float = 0.5,
    sigma: float = 1.0,
    x0: float = 0.0,
) -> StateVector:
    """Two Gaussians of width ``sigma`` centred at ``x0`` and ``x0 + separation``.

    ``weight`` is the probability carried by the second bump (exact once the
    bumps no longer overlap).
    """
    if not 0.0 <= weight <= 1.0:
        raise ValueError("weight must lie in [0, 1]")
    x = sys.sites
    first = np.exp(-((x - x0) ** 2) / (4 * sigma**2))
    second = np.exp(-((x - x0 - separation) ** 2) / (4 * sigma**2))
    first /= np.linalg.norm(first)
    second /= np.linalg.norm(second)
    return StateVector(math.sqrt(1 - weight) * first + math.sqrt(weight) * second)


def random_localized_state(dim: int, rng: np.random.Generator, max_width: int | None = None) -> StateVector:
    """Random complex amplitudes on a random window of consecutive sites."""
    max_width = max_width or dim
    width = int(rng.integers(2, max(3, max_width + 1)))
    start = int(rng.integers(0, dim - width + 1))
    amps = np.zeros(dim, dtype=complex)
    amps[start : start + width] = rng.standard_normal(width) + 1j * rng.standard_normal(width)
    return StateVector(amps)


@dataclass(frozen=True)
class Lattice2D:
    line: LatticeSystem
    P1: HermitianOperator
    P2: HermitianOperator
    X1: HermitianOperator
    X2: HermitianOperator

    @property
    def dim(self) -> int:
        return self.line.N**2

    @property
    def translations(self) -> GeneratorSet:
        return GeneratorSet((self.P1, self.P2), ("P1", "P2"))


def make_lattice_2d(N: int, L: float, scale: ScaleLike = UNIT_SCALE) -> Lattice2D:
    """Square periodic lattice; generators act on the tensor factors."""
    sys = make_lattice(N, L, scale)
    eye = np.eye(N)
    esP = sys.P.eigensystem
    P1 = HermitianOperator.from_spectrum(np.kron(esP.values, np.ones(N)), np.kron(esP.vectors, eye), label="P1")
    P2 = HermitianOperator.from_spectrum(np.kron(np.ones(N), esP.values), np.kron(eye, esP.vectors), label="P2")
    X1 = HermitianOperator(np.kron(sys.X.matrix, eye), label="X1")
    X2 = HermitianOperator(np.kron(eye, sys.X.matrix), label="X2")
    return Lattice2D(sys, P1, P2, X1, X2)


def gaussian_packet_2d(sys2: Lattice2D, center=(0.0, 0.0), momentum=(0.0, 0.0), sigma=(1.0, 1.0)) -> StateVector:
    gx = gaussian_packet(sys2.line, center[0], momentum[0], sigma[0]).amplitudes
    gy = gaussian_packet(sys2.line, center[1], momentum[1], sigma[1]).amplitudes
    return StateVector(np.kron(gx, gy))


# -- rotor -------------------------------------------------------------------


@dataclass(frozen=True)
class RotorSystem:
    m_max: int
    J: HermitianOperator
    Phi_measure: SpectralMeasure
    Phi: HermitianOperator
    Phi_sq: HermitianOperator
    angles: np.ndarray
    hbar: float = 1.0

    @property
    def dim(self) -> int:
        return 2 * self.m_max + 1

    @property
    def grid_step(self) -> float:
        return 2.0 * math.pi / self.dim

    @property
    def ms(self) -> np.ndarray:
        return np.arange(-self.m_max, self.m_max + 1)

    def angle_basis(self) -> np.ndarray:
        """Columns ``|phi_k> = dim^(-1/2) sum_m exp(-i m phi_k) |m>``."""
        return np.exp(-1j * np.outer(self.ms, self.angles)) / math.sqrt(self.dim)


def _angle_square_matrix(ms: np.ndarray) -> np.ndarray:
    """Matrix of the continuum angle-squared operator (angle in ``[-pi, pi]``) between ``|m>`` states.

    ``(1/2pi) int phi^2 exp(i d phi) dphi`` is ``pi^2/3`` for ``d = 0`` and
    ``2 (-1)^d / d^2`` otherwise.
    """
    d = np.subtract.outer(ms, ms).astype(float)
    with np.errstate(divide="ignore"):
        off = 2.0 * np.where(d.astype(int) % 2 == 0, 1.0, -1.0) / d**2
    return np.where(d == 0, math.pi**2 / 3.0, off)


def make_rotor(m_max: int, scale: ScaleLike = UNIT_SCALE) -> RotorSystem:
    if m_max < 2:
        raise ValueError("rotor needs m_max >= 2")
    hbar = hbar_of(scale)
    n = 2 * m_max + 1
    ms = np.arange(-m_max, m_max + 1)
    angles = 2.0 * math.pi * np.arange(n) / n
    F = np.exp(-1j * np.outer(ms, angles)) / math.sqrt(n)
    J = HermitianOperator.from_spectrum(hbar * ms, np.eye(n), label="J")
    centred = np.where(angles > math.pi, angles - 2.0 * math.pi, angles)
    Phi = HermitianOperator.from_spectrum(centred, F, label="Phi")
    Phi_sq = HermitianOperator(_angle_square_matrix(ms), label="Phi^2")
    measure = SpectralMeasure.from_basis(angles, F, CIRCLE)
    return RotorSystem(m_max, J, measure, Phi, Phi_sq, angles, hbar)


def rotor_eigenstate(rot: RotorSystem, m: int) -> StateVector:
    return StateVector.basis(rot.dim, m + rot.m_max)


def rotor_superposition(rot: RotorSystem, ms, amplitudes=None) -> StateVector:
    amps = np.zeros(rot.dim, dtype=complex)
    coeffs = np.ones(len(ms)) if amplitudes is None else np.asarray(amplitudes, dtype=complex)
    for m, c in zip(ms, coeffs):
        amps[m + rot.m_max] += c
    return StateVector(amps)


def von_mises_state(rot: RotorSystem, center: float = 0.0, kappa: float = 4.0, m0: int = 0) -> StateVector:
    """Angular amplitude ``exp(kappa (cos(phi - center) - 1) / 2)`` on the grid, boosted by ``m0``."""
    phi = rot.angles
    amp = np.exp(0.5 * kappa * (np.cos(phi - center) - 1.0) + 1j * m0 * phi)
    return StateVector(rot.angle_basis() @ amp)


# -- spin --------------------------------------------------------------------


@dataclass(frozen=True)
class SpinSystem:
    j: Fraction
    J1: HermitianOperator
    J2: HermitianOperator
    J3: HermitianOperator
    hbar: float = 1.0

    @property
    def dim(self) -> int:
        return int(2 * self.j + 1)

    @property
    def generators(self) -> GeneratorSet:
        return GeneratorSet((self.J1, self.J2, self.J3), ("J1", "J2", "J3"))


def make_spin(j, scale: ScaleLike = UNIT_SCALE) -> SpinSystem:
    """Angular-momentum matrices in the ``|j, m>`` basis ordered ``m = j, j-1, ..., -j``."""
    jj = Fraction(j).limit_denominator(2)
    if jj < 0 or (2 * jj).denominator != 1 or abs(float(jj) - float(j)) > 1e-12:
        raise ValueError(f"spin must be a non-negative half-integer, got {j!r}")
    hbar = hbar_of(scale)
    jf = float(jj)
    m = jf - np.arange(int(2 * jj) + 1)
    raise_ = np.diag(np.sqrt(jf * (jf + 1) - m[1:] * (m[1:] + 1)), k=1)
    J1 = 0.5 * (raise_ + raise_.T)
    J2 = -0.5j * (raise_ - raise_.T)
    J3 = np.diag(m)
    return SpinSystem(
        jj,
        HermitianOperator(hbar * J1, label="J1"),
        HermitianOperator(hbar * J2, label="J2"),
        HermitianOperator(hbar * J3, label="J3"),
        hbar,
    )


def spin_coherent_state(spin: SpinSystem, theta: float, phi: float) -> StateVector:
    """``|j, j>`` rotated to point along polar angle ``theta`` and azimuth ``phi``."""
    from .hilbert import evolve

    top = StateVector.basis(spin.dim, 0)
    return evolve(spin.J3, phi, evolve(spin.J2, theta, top, spin.hbar), spin.hbar)


# -- two-level systems ---------------------------------------------------------


def two_level(splitting: float = 1.0, scale: ScaleLike = UNIT_SCALE) -> tuple[HermitianOperator, StateVector]:
    """``H = (hbar * splitting / 2) sigma_z`` and the equal superposition of its levels."""
    hbar = hbar_of(scale)
    H = HermitianOperator.from_spectrum([-0.5 * hbar * splitting, 0.5 * hbar * splitting], np.eye(2)[:, ::-1], label="H")
    return H, StateVector([1.0, 1.0])


@dataclass(frozen=True)
class RabiDrive:
    """Two-level atom, bare splitting ``drive_frequency + detuning``.

    ``linear``:   ``H(t) = (hbar w0/2) sz + hbar Omega cos(w t) sx``
    ``circular``: ``H(t) = (hbar w0/2) sz + (hbar Omega/2)(cos(w t) sx + sin(w t) sy)``

    Both give Rabi frequency ``Omega`` on resonance; the circular drive is
    solved exactly by the rotating frame, the linear one only within the
    rotating-wave approximation (``Omega << w``). Basis: index 0 is the upper
    level, index 1 the ground state.
    """

    rabi_frequency: float
    drive_frequency: float
    detuning: float = 0.0
    polarization: str = "linear"
    hbar: float = 1.0

    @property
    def bare_frequency(self) -> float:
        return self.drive_frequency + self.detuning

    @property
    def static(self) -> HermitianOperator:
        """Hamiltonian with the drive switched off."""
        return HermitianOperator(0.5 * self.hbar * self.bare_frequency * SIGMA_Z, label="H0")

    @property
    def hamiltonian(self) -> DrivenHamiltonian:
        hbar, w0, w, om = self.hbar, self.bare_frequency, self.drive_frequency, self.rabi_frequency
        base = 0.5 * hbar * w0 * SIGMA_Z
        if self.polarization == "linear":

            def H(t):
                return base + hbar * om * math.cos(w * t) * SIGMA_X

        else:

            def H(t):
                return base + 0.5 * hbar * om * (math.cos(w * t) * SIGMA_X + math.sin(w * t) * SIGMA_Y)

        return DrivenHamiltonian(H, 2, label=f"rabi-{self.polarization}")

    @property
    def ground(self) -> StateVector:
        return StateVector.basis(2, 1)

    @property
    def generalized_rabi_frequency(self) -> float:
        return math.hypot(self.rabi_frequency, self.detuning)

    def excited_population(self, t):
        """Upper-level population from the ground state (exact for circular drive)."""
        wr = self.generalized_rabi_frequency
        if wr == 0:
            return np.zeros_like(np.asarray(t, dtype=float))
        return (self.rabi_frequency / wr) ** 2 * np.sin(0.5 * wr * np.asarray(t, dtype=float)) ** 2

    def first_substantial_time(self) -> float | None:
        """First time the state is one radian away from the ground state (resonant drive)."""
        if self.detuning != 0 or self.rabi_frequency == 0:
            return None
        return 2.0 / self.rabi_frequency


def make_rabi(
    rabi_frequency: float,
    drive_frequency: float,
    detuning: float = 0.0,
    polarization: str = "linear",
    scale: ScaleLike = UNIT_SCALE,
) -> RabiDrive:
    if rabi_frequency < 0:
        raise ValueError("Rabi frequency must be non-negative")
    if polarization not in ("linear", "circular"):
        raise ValueError("polarization must be 'linear' or 'circular'")
    return RabiDrive(float(rabi_frequency), float(drive_frequency), float(detuning), polarization, hbar_of(scale))
