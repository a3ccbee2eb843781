import math

import numpy as np
import pytest

from certainty.geometry import quantum_angle
from certainty.hilbert import DimensionMismatchError, HermitianOperator, NotHermitianError, StateVector, evolve, std_dev
from certainty.models import make_lattice_2d, gaussian_packet_2d, make_spin
from certainty.unitary import (
    DrivenHamiltonian,
    GeneratorSet,
    LogCoordinates,
    certainty_report,
    combined_generator,
    min_substantial_parameter,
    multi_certainty_report,
    orbit_angles,
    propagate_driven,
)

from conftest import random_hermitian, random_state

A2 = HermitianOperator(np.diag([0.5, -0.5]))
plus = StateVector([1, 1])


def test_combined_generator_examples():
    s = make_spin(0.5)
    gs = s.generators
    assert np.allclose(combined_generator(gs, (1, 0, 0)).matrix, s.J1.matrix)
    assert np.allclose(combined_generator(gs, LogCoordinates((0, 0, 0))).matrix, 0)
    a, b, c = 0.3, -1.2, 0.8
    M = combined_generator(gs, (a, b, c)).matrix
    # (1/2)(a sx + b sy + c sz) squares to (a^2 + b^2 + c^2)/4; on |up> the mean is c/2
    up = StateVector.basis(2, 0)
    assert std_dev(M, up) == pytest.approx(0.5 * math.hypot(a, b), abs=1e-14)
    with pytest.raises(DimensionMismatchError):
        combined_generator(gs, (1, 2))


def test_generator_set_validation():
    with pytest.raises(ValueError):
        GeneratorSet(())
    with pytest.raises(DimensionMismatchError):
        GeneratorSet((np.eye(2), np.eye(3)))
    with pytest.raises(ValueError):
        LogCoordinates((1.0, math.inf))


def test_certainty_report_examples():
    rep = certainty_report(StateVector.basis(2, 0), A2, 5.0)
    assert rep.status == "inapplicable" and rep.context["angle"] <= 1e-15
    rep = certainty_report(plus, A2, 2.0)
    assert rep.context["substantial"] or rep.context["angle"] == pytest.approx(1.0, abs=1e-12)
    assert rep.lhs == pytest.approx(1.0) and rep.rhs == 1.0
    rep = certainty_report(plus, A2, 2.5)
    assert rep.status == "pass" and rep.context["substantial"]


def test_certainty_sweep_small():
    rng = np.random.default_rng(99)
    substantial = 0
    for _ in range(400):
        dim = int(rng.choice([2, 4, 8]))
        A = random_hermitian(dim, rng)
        psi = random_state(dim, rng)
        ds = float(rng.uniform(-4, 4))
        rep = certainty_report(psi, A, ds)
        if rep.context["substantial"]:
            substantial += 1
            assert rep.status == "pass"
        if rep.lhs < rep.rhs:
            assert rep.context["angle"] < 1.0
    assert substantial > 50


def test_multi_certainty_reduces_to_single():
    s = make_spin(1)
    psi = StateVector([1, 0, 1])
    a = multi_certainty_report(psi, s.generators, (0, 0, 1.3))
    b = certainty_report(psi, s.J3, 1.3)
    assert a.lhs == pytest.approx(b.lhs) and a.context["angle"] == pytest.approx(b.context["angle"])


def test_multi_certainty_spin_one():
    s = make_spin(1)
    psi = StateVector([1, 0, 1])
    assert std_dev(s.J3, psi) == pytest.approx(1.0)
    rep = multi_certainty_report(psi, s.generators, (0, 0, 1.0))
    assert rep.context["angle"] == pytest.approx(1.0, abs=1e-12)
    assert rep.lhs == pytest.approx(1.0)


def test_multi_certainty_homogeneity(rng):
    s = make_spin(1.5)
    psi = random_state(s.dim, rng)
    d = np.array([0.2, -0.7, 0.4])
    a = std_dev(combined_generator(s.generators, 3.0 * d), psi)
    b = std_dev(combined_generator(s.generators, d), psi)
    assert a == pytest.approx(3.0 * b, abs=1e-10)


def test_multi_certainty_2d_translations(rng):
    sys2 = make_lattice_2d(32, 9.0)
    for _ in range(5):
        psi = gaussian_packet_2d(sys2, rng.uniform(-1, 1, 2), (0.0, 0.0), rng.uniform(0.9, 1.1, 2))
        delta = rng.uniform(-4, 4, 2)
        rep = multi_certainty_report(psi, sys2.translations, delta)
        assert rep.status in ("pass", "inapplicable")


def test_orbit_angles_matches_evolve(rng):
    A = random_hermitian(5, rng)
    psi = random_state(5, rng)
    s = np.linspace(-3, 3, 11)
    fast = orbit_angles(A, psi, s)
    slow = [quantum_angle(evolve(A, x, psi), psi) for x in s]
    assert np.allclose(fast, slow, atol=1e-7)


def test_min_substantial_parameter():
    assert min_substantial_parameter(plus, A2) == pytest.approx(2.0, rel=1e-9)
    assert min_substantial_parameter(StateVector.basis(2, 1), A2) is None
    with pytest.raises(ValueError):
        min_substantial_parameter(plus, A2, search_cap=0.0)


def test_min_substantial_parameter_is_first_crossing(rng):
    for _ in range(40):
        A = random_hermitian(6, rng)
        psi = random_state(6, rng)
        s = min_substantial_parameter(psi, A, search_cap=20.0)
        if s is None:
            continue
        assert quantum_angle(evolve(A, s, psi), psi) >= 1.0
        assert s * std_dev(A, psi) >= 1.0 - 1e-9
        earlier = orbit_angles(A, psi, np.linspace(0, s * (1 - 1e-7), 2000))
        assert np.all(earlier < 1.0)


def test_driven_hamiltonian_checks():
    bad = DrivenHamiltonian(lambda t: np.array([[0, 1], [0, 0]]), 2)
    with pytest.raises(NotHermitianError):
        bad.matrix(0.0)
    wrong = DrivenHamiltonian(lambda t: np.eye(3), 2)
    with pytest.raises(DimensionMismatchError):
        wrong.matrix(0.0)


def test_propagate_zero_and_constant():
    psi = StateVector([1, 1j])
    zero = DrivenHamiltonian(lambda t: np.zeros((2, 2)), 2)
    traj = propagate_driven(zero, psi, 0.0, 1.0, 0.1)
    assert np.allclose(traj.states, psi.amplitudes)
    const = DrivenHamiltonian(lambda t: A2, 2)
    traj = propagate_driven(const, psi, 0.0, 1.0, 1e-3)
    assert traj.times[-1] == 1.0
    assert quantum_angle(traj.state(-1), evolve(A2, 1.0, psi)) <= 1e-8
    assert np.max(np.abs(traj.norm_drift)) <= 1e-12


def test_propagate_guards():
    const = DrivenHamiltonian(lambda t: A2, 2)
    with pytest.raises(ValueError):
        propagate_driven(const, plus, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        propagate_driven(const, plus, 1.0, 1.0, 0.1)
