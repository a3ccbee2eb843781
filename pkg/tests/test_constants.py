import math

import pytest
from scipy.special import ndtri

from certainty import constants


def test_tail_probability_digits():
    assert constants.TAIL_PROBABILITY == pytest.approx(0.0792645075960518, abs=1e-15)
    assert round(constants.TAIL_PROBABILITY, 5) == 0.07926


def test_correction_identity():
    assert abs(constants.CORRECTION_ANGLE - (math.pi / 4 - 0.5)) <= 1e-12


def test_ratio_bound_is_sqrt_of_twice_tail():
    assert constants.RATIO_BOUND**2 == pytest.approx(2 * constants.TAIL_PROBABILITY, rel=1e-15)
    assert round(constants.RATIO_BOUND, 3) == 0.398


@pytest.mark.parametrize("p", [0.5, 0.6, 0.9, 1 - constants.TAIL_PROBABILITY, 0.999, 1e-6])
def test_normal_quantile_matches_scipy(p):
    assert constants.normal_quantile(p) == pytest.approx(float(ndtri(p)), abs=1e-12)


def test_gaussian_quantile():
    assert constants.GAUSSIAN_QUANTILE == pytest.approx(float(ndtri(1 - constants.TAIL_PROBABILITY)), rel=1e-13)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 2.0])
def test_normal_quantile_domain(p):
    with pytest.raises(ValueError):
        constants.normal_quantile(p)
