import math

import numpy as np
import pytest

from certainty.constants import RATIO_BOUND, TAIL_PROBABILITY
from certainty.hilbert import HermitianOperator, StateVector
from certainty.models import (
    bimodal_packet,
    gaussian_packet,
    make_lattice,
    make_rabi,
    make_rotor,
    rotor_eigenstate,
    rotor_superposition,
    two_level,
    von_mises_state,
)
from certainty.relations import (
    RELATIONS,
    distribution_measure,
    judge,
    kennard,
    mandelshtam_tamm_closed,
    mandelshtam_tamm_driven,
    ratio_check,
    uncertainty_angle,
    uncertainty_xp,
)
from certainty.reports import RatioReport, RelationReport
from certainty.spectral import SpectralMeasure
from certainty.unitary import DrivenHamiltonian

from conftest import random_hermitian, random_state


@pytest.fixture(scope="module")
def lattice():
    return make_lattice(256, 256.0)


@pytest.fixture(scope="module")
def rotor():
    return make_rotor(24)


def test_report_invariants():
    r = RelationReport("x", 1.0, 1.0 + 5e-10, 1e-9)
    assert r.passed and r.status == "pass" and r.slack == pytest.approx(-5e-10)
    r = RelationReport("x", 1.0, 1.1, 1e-9)
    assert not r.passed and r.failed
    with pytest.raises(ValueError):
        RelationReport("x", 1.0, 1.0, 1e-9, status="maybe")
    d = RelationReport("x", 1.0, 0.5, 1e-9, context={"a": np.float64(2.0), "b": np.arange(2)}).to_dict()
    assert d["context"] == {"a": 2.0, "b": [0, 1]} and d["pass"]


def test_kennard_gaussians(lattice):
    for sigma in (12.0, 6.0):
        rep = kennard(gaussian_packet(lattice, 0.0, 0.0, sigma), lattice.X, lattice.P)
        assert rep.lhs == pytest.approx(0.5, rel=0.01)
        assert rep.context["commutator_gauge"] >= 0.999
        assert rep.lhs >= rep.context["robertson_bound"] - 1e-12


def test_kennard_bimodal(lattice):
    rep = kennard(bimodal_packet(lattice, 80.0, 0.5, 6.0, -40.0), lattice.X, lattice.P)
    assert rep.lhs > 5 * rep.rhs and rep.status == "pass"


def test_kennard_gauge_gate():
    lat = make_lattice(16, 16.0)
    psi = StateVector(np.exp(1j * np.pi * np.arange(16)))  # Nyquist plane wave: <[X, P]> vanishes
    rep = kennard(psi, lat.X, lat.P)
    assert rep.context["commutator_gauge"] < 0.999 and rep.status == "inapplicable"


def test_uncertainty_xp_gaussian(lattice):
    rep = uncertainty_xp(gaussian_packet(lattice, 0.0, 0.0, 20.0), lattice.X_measure, lattice.P)
    assert rep.status == "pass"
    assert rep.lhs == pytest.approx(1.41003612874, rel=0.02)
    assert rep.context["covariance_deviation"] <= 1e-9
    assert rep.context["projected_angle"] == pytest.approx(math.pi / 2, abs=1e-10)
    assert rep.context["angle"] >= rep.context["bound"] - 1e-10


def test_uncertainty_xp_degenerate(lattice):
    rep = uncertainty_xp(StateVector.basis(256, 100), lattice.X_measure, lattice.P)
    assert rep.status == "degenerate"


def test_uncertainty_xp_inapplicable_without_covariance():
    # momentum generating a non-uniform grid does not shift the position atoms
    lat = make_lattice(16, 16.0)
    warped = SpectralMeasure.from_basis(np.cumsum(np.linspace(1, 2, 16)), np.eye(16))
    psi = StateVector(np.exp(-((np.arange(16) - 8.0) ** 2) / 8))
    rep = uncertainty_xp(psi, warped, lat.P)
    assert rep.status == "inapplicable"


def test_uncertainty_xp_seam_weight():
    # weight near the upper end of the ring crosses the seam under the shift
    lat = make_lattice(64, 64.0)
    sites = np.arange(64)
    centred = StateVector(np.exp(-((sites - 32.0) ** 2) / 18))
    edge = StateVector(np.exp(-((sites - 58.0) ** 2) / 18))
    inner = uncertainty_xp(centred, lat.X_measure, lat.P)
    outer = uncertainty_xp(edge, lat.X_measure, lat.P)
    assert inner.context["seam_weight"] < 1e-12
    assert outer.context["seam_weight"] > 1e-3
    assert outer.status == "pass"
    shifted_mass = math.cos(outer.context["correction_shifted"]) ** 2
    assert shifted_mass < 1 - TAIL_PROBABILITY - 1e-3


def test_uncertainty_xp_requires_line(rotor):
    with pytest.raises(ValueError):
        uncertainty_xp(rotor_eigenstate(rotor, 0), rotor.Phi_measure, rotor.J)


def test_bimodal_separation_behaviour(lattice):
    ken, xp = [], []
    for sep in (40.0, 80.0, 120.0):
        psi = bimodal_packet(lattice, sep, 0.05, 6.0, -60.0)
        ken.append(kennard(psi, lattice.X, lattice.P).lhs)
        xp.append(uncertainty_xp(psi, lattice.X_measure, lattice.P).lhs)
    assert ken[0] < ken[1] < ken[2]
    assert max(xp) / min(xp) < 1.1


def test_ratio_examples(lattice):
    m, psi = distribution_measure([0.0, 1.0], [0.5, 0.5])
    r = ratio_check(psi, m)
    assert (r.delta_big, r.delta_small, r.ratio) == (pytest.approx(0.5), 1.0, pytest.approx(1.0))
    assert r.bound == RATIO_BOUND
    g = ratio_check(gaussian_packet(lattice, 0, 0, 20.0), lattice.X_measure)
    assert g.ratio == pytest.approx(1 / 1.41003612874, rel=0.02)


def test_ratio_heavy_tail_grows():
    ratios = []
    for K in (10.0, 100.0, 1000.0):
        m, psi = distribution_measure([-K, 0.0, 1.0, K], [0.05, 0.45, 0.45, 0.05])
        r = ratio_check(psi, m)
        ratios.append(r.ratio)
        assert r.as_relation().status == "pass"
    assert ratios[0] < ratios[1] < ratios[2]


def test_ratio_point_mass_degenerate():
    m, psi = distribution_measure([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
    r = ratio_check(psi, m)
    assert r.degenerate and r.ratio == math.inf
    assert r.as_relation().status == "degenerate"
    assert isinstance(r, RatioReport)


def test_uncertainty_angle_examples(rotor):
    rep = uncertainty_angle(rotor_eigenstate(rotor, 2), rotor.Phi_measure, rotor.J)
    assert rep.rhs == math.pi and rep.lhs >= math.pi and rep.status == "pass"
    rep = uncertainty_angle(rotor_superposition(rotor, [0, 1]), rotor.Phi_measure, rotor.J)
    assert rep.context["std_j"] == pytest.approx(0.5)
    assert rep.rhs == pytest.approx(2.0) and rep.status == "pass"
    rep = uncertainty_angle(von_mises_state(rotor, 0.7, 10.0), rotor.Phi_measure, rotor.J)
    assert rep.status == "pass" and rep.rhs < math.pi
    assert rep.context["projected_angle"] == pytest.approx(math.pi / 2, abs=1e-10)


def test_judge_examples(rotor):
    rep = judge(rotor_eigenstate(rotor, 1), rotor.Phi, rotor.J, phi_sq=rotor.Phi_sq)
    assert rep.context["angle_spread"] == pytest.approx(math.pi / math.sqrt(3), abs=1e-9)
    assert abs(rep.lhs) <= 1e-9 and abs(rep.rhs) <= 1e-9
    centred = judge(von_mises_state(rotor, 0.0, 6.0), rotor.Phi, rotor.J, phi_sq=rotor.Phi_sq)
    shifted = judge(von_mises_state(rotor, 2.2, 6.0), rotor.Phi, rotor.J, phi_sq=rotor.Phi_sq)
    assert shifted.context["angle_spread"] < math.pi / math.sqrt(3)
    assert shifted.context["angle_spread"] == pytest.approx(centred.context["angle_spread"], abs=1e-7)
    assert shifted.status == "pass"


def test_judge_default_uses_grid_square(rotor):
    # without the continuum matrix the grid second moment of a uniform state falls short of pi^2/3
    rep = judge(rotor_eigenstate(rotor, 0), rotor.Phi, rotor.J)
    assert rep.context["angle_spread"] < math.pi / math.sqrt(3)


def test_mt_closed_examples():
    H, psi = two_level(1.0)
    rep = mandelshtam_tamm_closed(psi, H)
    assert rep.lhs == pytest.approx(1.0, abs=1e-9) and rep.status == "pass"
    assert mandelshtam_tamm_closed(StateVector.basis(2, 0), H).status == "inapplicable"
    rng = np.random.default_rng(5)
    for _ in range(30):
        rep = mandelshtam_tamm_closed(random_state(8, rng), random_hermitian(8, rng))
        assert rep.status in ("pass", "inapplicable")


def test_mt_driven_constant_matches_closed():
    H, psi = two_level(1.3)
    closed = mandelshtam_tamm_closed(psi, H)
    driven = mandelshtam_tamm_driven(DrivenHamiltonian(lambda t: H, 2), psi, dt=1e-3)
    assert driven.lhs == pytest.approx(closed.lhs, abs=1e-6)
    assert driven.context["tau"] == pytest.approx(closed.context["t_star"], abs=1e-6)


def test_mt_driven_cap_and_convergence():
    H = HermitianOperator(np.diag([1.0, -1.0]))
    rep = mandelshtam_tamm_driven(DrivenHamiltonian(lambda t: H, 2), StateVector.basis(2, 0), dt=0.01, t_max=1.0)
    assert rep.status == "inapplicable" and rep.context["reason"] == "cap reached"
    rb = make_rabi(1.0, 10.0, 0.0, "circular")
    coarse = mandelshtam_tamm_driven(rb.hamiltonian, rb.ground, dt=0.1)
    assert coarse.status == "inapplicable" and coarse.context["reason"] == "unconverged"


def test_registry():
    assert len(RELATIONS) == 7
    assert RELATIONS["uncertainty_xp"].equation == "Eq. (12)"
    assert RELATIONS["judge"].equation == "Eq. (14)"
