"""Transcendental constants used by the interval-uncertainty relations.

All values are computed from primitives at import time; nothing is typed in
as a decimal literal.
"""

import math

__all__ = [
    "CORRECTION_ANGLE",
    "GAUSSIAN_QUANTILE",
    "RATIO_BOUND",
    "SUBSTANTIAL_ANGLE",
    "TAIL_PROBABILITY",
    "normal_quantile",
]

#: Angle (radians) beyond which two states count as substantially different.
SUBSTANTIAL_ANGLE = 1.0

#: Probability left in each tail when measuring the interval uncertainty.
TAIL_PROBABILITY = (1.0 - math.sin(1.0)) / 2.0

#: Lower bound of ``2 * std / width`` for any distribution.
RATIO_BOUND = math.sqrt(1.0 - math.sin(1.0))

#: ``arcsin(sqrt(TAIL_PROBABILITY))``; equals ``pi/4 - 1/2`` identically.
CORRECTION_ANGLE = math.asin(math.sqrt(TAIL_PROBABILITY))


def normal_quantile(p: float, *, tol: float = 1e-15) -> float:
    """Standard normal quantile by bisection on ``erf``.

    Deliberately dependency-free so it can serve as an independent check on
    library quantile functions.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    lo, hi = -40.0, 40.0
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if 0.5 * (1.0 + math.erf(mid / math.sqrt(2.0))) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


#: Half-width, in units of sigma, of the interval uncertainty of a Gaussian.
GAUSSIAN_QUANTILE = normal_quantile(1.0 - TAIL_PROBABILITY)
