"""Evaluators for the uncertainty and speed-limit inequalities.

Each evaluator returns a :class:`~certainty.reports.RelationReport` oriented as
``lhs >= rhs``. Cases outside an inequality's hypotheses are reported as
``inapplicable`` and point-mass distributions as ``degenerate``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import CORRECTION_ANGLE, RATIO_BOUND, SUBSTANTIAL_ANGLE, TAIL_PROBABILITY
from .geometry import quantum_angle
from .hilbert import (
    UNIT_SCALE,
    HermitianOperator,
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
from .reports import DEGENERATE, INAPPLICABLE, RatioReport, RelationReport, relation_tolerance
from .spectral import (
    CIRCLE,
    LINE,
    SpectralMeasure,
    circle_uncertainty,
    line_uncertainty,
    shift_covariance_check,
)
from .unitary import DrivenHamiltonian, certainty_report, min_substantial_parameter, rk4_step

__all__ = [
    "RELATIONS",
    "RelationInfo",
    "distribution_measure",
    "judge",
    "kennard",
    "mandelshtam_tamm_closed",
    "mandelshtam_tamm_driven",
    "ratio_check",
    "uncertainty_angle",
    "uncertainty_xp",
]

COVARIANCE_TOL = 1e-9


def kennard(psi, X, P, scale: ScaleLike = UNIT_SCALE, *, min_gauge: float = 0.999) -> RelationReport:
    """``std(X) * std(P) >= hbar / 2``.

    On a finite model ``[X, P] = i hbar`` cannot hold as an operator identity;
    the state-wise gauge ``|<[X, P]>| / hbar`` is recorded and the case is
    inapplicable when it falls below ``min_gauge``. What always holds is the
    Robertson bound ``gauge * hbar / 2`` (also recorded), so an admitted state
    with gauge below one can sit under ``hbar / 2`` by up to
    ``(1 - gauge) * hbar / 2``.
    """
    X, P = _as_operator(X), _as_operator(P)
    hbar = hbar_of(scale)
    v = _amps(psi)
    _check_dims(X.dim, v.size)
    xv, pv = X.matrix @ v, P.matrix @ v
    gauge = abs(2.0 * np.vdot(xv, pv).imag) / hbar
    sx, sp = std_dev(X, v), std_dev(P, v)
    return RelationReport(
        "kennard",
        sx * sp,
        0.5 * hbar,
        relation_tolerance(0.5 * hbar),
        status="" if gauge >= min_gauge else INAPPLICABLE,
        context={"std_x": sx, "std_p": sp, "commutator_gauge": gauge, "robertson_bound": 0.5 * hbar * gauge, "hbar": hbar},
    )


def _half_gap(m: SpectralMeasure) -> float:
    if len(m) < 2:
        return 0.5
    gaps = np.diff(m.values)
    if m.topology == CIRCLE:
        gaps = np.append(gaps, m.values[0] + 2 * math.pi - m.values[-1])
    return 0.5 * float(np.min(gaps))


def _projection_angle(m: SpectralMeasure, psi, mask: np.ndarray) -> tuple[float, np.ndarray]:
    """Angle between ``psi`` and its normalized projection onto the masked atoms."""
    p = m.probabilities(psi)
    mass = float(np.sum(p[mask]))
    v = _amps(psi)
    out = np.zeros_like(v)
    for k in np.flatnonzero(mask):
        B = m.bases[k]
        out += B @ (B.conj().T @ v)
    return math.acos(min(1.0, math.sqrt(max(mass, 0.0)))), out


def _double_triangle(m: SpectralMeasure, psi, shifted, options) -> dict:
    """Lower bound on ``angle(psi, shifted)`` through two projected states.

    ``options`` holds pairs of atom masks (support for ``psi``, support for
    ``shifted``); the pair giving the largest bound is kept.
    """
    actual = quantum_angle(psi, shifted)
    best = None
    for split, (first, second) in enumerate(options):
        if np.any(first & second):
            continue
        c1, u1 = _projection_angle(m, psi, first)
        c2, u2 = _projection_angle(m, shifted, second)
        n1, n2 = np.linalg.norm(u1), np.linalg.norm(u2)
        projected = quantum_angle(u1 / n1, u2 / n2) if n1 > 0 and n2 > 0 else math.pi / 2
        bound = projected - c1 - c2
        if best is None or bound > best["bound"]:
            best = {
                "split": split,
                "projected_angle": projected,
                "correction_initial": c1,
                "correction_shifted": c2,
                "bound": bound,
            }
    result = {"angle": actual, "ideal_correction": CORRECTION_ANGLE}
    if best is not None:
        result.update(best)
        result["triangle_slack"] = actual - best["bound"]
    return result


def uncertainty_xp(
    psi,
    X_measure: SpectralMeasure,
    P,
    scale: ScaleLike = UNIT_SCALE,
    *,
    q: float = TAIL_PROBABILITY,
    covariance_tol: float = COVARIANCE_TOL,
) -> RelationReport:
    """``width * std(P) >= hbar`` with ``width`` the quantile interval of ``X``.

    The shift covariance of the measure under ``P`` is checked at a shift of
    one width before the inequality is asserted.
    """
    if X_measure.topology != LINE:
        raise ValueError("uncertainty_xp needs a line measure")
    P = _as_operator(P)
    hbar = hbar_of(scale)
    u = line_uncertainty(X_measure, psi, q)
    sp = std_dev(P, psi)
    ctx = {"l": u.l, "r": u.r, "width": u.width, "left_tail": u.left_tail, "right_tail": u.right_tail, "std_p": sp, "q": q, "hbar": hbar}
    tol = relation_tolerance(hbar)
    if u.degenerate:
        return RelationReport("uncertainty_xp", 0.0, hbar, tol, status=DEGENERATE, context=ctx)
    dev = shift_covariance_check(X_measure, P, u.width, scale)
    ctx["covariance_deviation"] = dev
    if dev > covariance_tol:
        return RelationReport("uncertainty_xp", u.width * sp, hbar, tol, status=INAPPLICABLE, context=ctx)

    # On a periodic model the shift carries weight near the upper end of the
    # atom range across the seam; that weight is missing from the shifted
    # projection and shows up as a larger correction angle.
    v = X_measure.values
    edge = 1e-12 * max(1.0, abs(v[-1]))
    ctx["seam_weight"] = float(np.sum(X_measure.probabilities(psi)[v + u.width > v[-1] + edge]))
    shifted = evolve(P, u.width, psi, scale)
    h = _half_gap(X_measure)
    inf = math.inf
    options = [
        (X_measure.mask(-inf, u.r), X_measure.mask(u.r, inf)),
        (X_measure.mask(-inf, u.r - h), X_measure.mask(u.r - h, inf)),
    ]
    ctx.update(_double_triangle(X_measure, psi, shifted, options))
    return RelationReport("uncertainty_xp", u.width * sp, hbar, tol, context=ctx)


def distribution_measure(values, probs) -> tuple[SpectralMeasure, StateVector]:
    """Line measure with one rank-one atom per value and a state realizing ``probs``."""
    values = np.asarray(values, dtype=float)
    probs = np.asarray(probs, dtype=float)
    order = np.argsort(values, kind="stable")
    n = len(values)
    measure = SpectralMeasure(values[order], [np.eye(n)[:, [k]] for k in range(n)], LINE)
    return measure, StateVector(np.sqrt(probs[order] / probs.sum()))


def ratio_check(psi, X_measure: SpectralMeasure, *, q: float = TAIL_PROBABILITY) -> RatioReport:
    """Standard deviation versus quantile width of the same distribution."""
    p = X_measure.probabilities(psi)
    v = X_measure.values
    mean = float(np.dot(p, v))
    sd = math.sqrt(max(0.0, float(np.dot(p, (v - mean) ** 2))))
    u = line_uncertainty(X_measure, psi, q)
    return RatioReport(sd, u.width, RATIO_BOUND, degenerate=u.degenerate)


def uncertainty_angle(
    psi,
    Phi_measure: SpectralMeasure,
    J,
    scale: ScaleLike = UNIT_SCALE,
    *,
    q: float = TAIL_PROBABILITY,
    covariance_tol: float = COVARIANCE_TOL,
) -> RelationReport:
    """``width >= min(hbar / std(J), pi)`` for the shortest angular arc holding ``1 - q``."""
    if Phi_measure.topology != CIRCLE:
        raise ValueError("uncertainty_angle needs a circle measure")
    J = _as_operator(J)
    hbar = hbar_of(scale)
    u = circle_uncertainty(Phi_measure, psi, q)
    sj = std_dev(J, psi)
    rhs = math.pi if sj == 0 else min(hbar / sj, math.pi)
    ctx = {"l": u.l, "r": u.r, "width": u.width, "outside": u.right_tail, "std_j": sj, "q": q, "hbar": hbar}
    tol = relation_tolerance(rhs)
    if u.degenerate:
        return RelationReport("uncertainty_angle", 0.0, rhs, tol, status=DEGENERATE, context=ctx)
    dev = shift_covariance_check(Phi_measure, J, u.width, scale)
    ctx["covariance_deviation"] = dev
    if dev > covariance_tol:
        return RelationReport("uncertainty_angle", u.width, rhs, tol, status=INAPPLICABLE, context=ctx)
    if u.width < math.pi:
        shifted = evolve(J, u.width, psi, scale)
        h = _half_gap(Phi_measure)
        m = Phi_measure
        options = [
            (m.mask(u.l - h, u.r), m.mask(u.r, u.r + u.width)),
            (m.mask(u.l - h, u.r - h), m.mask(u.r - h, u.r + u.width)),
        ]
        ctx.update(_double_triangle(m, psi, shifted, options))
    return RelationReport("uncertainty_angle", u.width, rhs, tol, context=ctx)


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def judge(
    psi,
    Phi,
    J,
    scale: ScaleLike = UNIT_SCALE,
    *,
    phi_sq=None,
    scan: int = 512,
    tol: float = 1e-8,
) -> RelationReport:
    """``D * std(J) >= (hbar/2) (1 - 3 D^2 / pi^2)`` with ``D`` the rotation-minimized angle spread.

    ``D^2 = min over rotations of <Phi^2>`` where ``Phi`` has spectrum in
    ``[-pi, pi]``. ``phi_sq`` overrides ``Phi @ Phi`` as the second-moment
    operator (a truncated rotor should pass the exact continuum matrix).
    """
    J = _as_operator(J)
    hbar = hbar_of(scale)
    sq = _as_operator(phi_sq).matrix if phi_sq is not None else _as_operator(Phi).matrix @ _as_operator(Phi).matrix
    vals, coeff = spectral_weights(J, psi)
    V = J.eigensystem.vectors
    M = V.conj().T @ sq @ V

    def second_moment(angles) -> np.ndarray:
        Y = np.exp(-1j * np.multiply.outer(np.atleast_1d(angles), vals) / hbar) * coeff
        return np.real(np.sum(np.conj(Y) * (Y @ M.T), axis=1))

    grid = 2.0 * math.pi * np.arange(scan) / scan
    f = second_moment(grid)
    i = int(np.argmin(f))
    step = grid[1] - grid[0]
    best = _golden_min(lambda s: float(second_moment(s)[0]), grid[i] - step, grid[i] + step, tol)
    fmin = float(second_moment(best)[0])
    if f[i] < fmin:
        best, fmin = float(grid[i]), float(f[i])
    spread = math.sqrt(max(fmin, 0.0))
    sj = std_dev(J, psi)
    rhs = 0.5 * hbar * (1.0 - 3.0 * spread**2 / math.pi**2)
    return RelationReport(
        "judge",
        spread * sj,
        rhs,
        relation_tolerance(rhs),
        context={"angle_spread": spread, "best_rotation": best % (2 * math.pi), "std_j": sj, "hbar": hbar},
    )


def mandelshtam_tamm_closed(
    psi,
    H,
    scale: ScaleLike = UNIT_SCALE,
    *,
    search_cap: float | None = None,
    threshold: float = SUBSTANTIAL_ANGLE,
) -> RelationReport:
    """``|dt| * std(H) >= hbar`` at the first time the state turns by ``threshold``.

    The time-shift group is generated by ``-H``; the spread is sign-blind. The
    search runs up to ``search_cap`` (default ``100 hbar / std(H)``).
    """
    H = _as_operator(H)
    hbar = hbar_of(scale)
    spread = std_dev(H, psi)
    tol = relation_tolerance(hbar)
    if spread == 0 or spread < 1e-14 * max(1.0, float(np.max(np.abs(H.matrix)))):
        return RelationReport("mandelshtam_tamm_closed", 0.0, hbar, tol, status=INAPPLICABLE, context={"reason": "stationary", "std_h": spread, "hbar": hbar})
    cap = search_cap if search_cap is not None else 100.0 * hbar / spread
    gen = -H
    t_star = min_substantial_parameter(psi, gen, scale, cap, threshold=threshold)
    if t_star is None:
        return RelationReport("mandelshtam_tamm_closed", 0.0, hbar, tol, status=INAPPLICABLE, context={"reason": "cap reached", "search_cap": cap, "std_h": spread, "hbar": hbar})
    rep = certainty_report(psi, gen, t_star, scale, threshold=threshold, relation_id="mandelshtam_tamm_closed")
    rep.context.update({"t_star": t_star, "std_h": spread, "search_cap": cap})
    return rep


def _first_crossing(H: DrivenHamiltonian, psi0, dt: float, t_max: float, hbar: float, threshold: float):
    v0 = np.array(_amps(psi0), dtype=complex)
    v = v0.copy()
    t = 0.0
    times = [0.0]
    spreads = [std_dev(H.matrix(0.0), v)]
    while t < t_max:
        h = min(dt, t_max - t)
        w = rk4_step(H, t, v, h, hbar)
        w /= np.linalg.norm(w)
        if quantum_angle(v0, w) >= threshold:
            lo, hi = 0.0, h
            while hi - lo > 1e-13 * (t + hi):
                mid = 0.5 * (lo + hi)
                u = rk4_step(H, t, v, mid, hbar)
                u /= np.linalg.norm(u)
                if quantum_angle(v0, u) >= threshold:
                    hi = mid
                else:
                    lo = mid
            w = rk4_step(H, t, v, hi, hbar)
            w /= np.linalg.norm(w)
            times.append(t + hi)
            spreads.append(std_dev(H.matrix(t + hi), w))
            return t + hi, np.array(times), np.array(spreads)
        v, t = w, t + h
        times.append(t)
        spreads.append(std_dev(H.matrix(t), v))
    return None, np.array(times), np.array(spreads)


def mandelshtam_tamm_driven(
    H: DrivenHamiltonian,
    psi0,
    scale: ScaleLike = UNIT_SCALE,
    dt: float = 1e-3,
    *,
    t_max: float = 100.0,
    threshold: float = SUBSTANTIAL_ANGLE,
    check_convergence: bool = True,
    rtol: float = 1e-4,
) -> RelationReport:
    """``tau * mean(std(H(t))) >= hbar`` for a time-dependent Hamiltonian.

    ``tau`` is the first time the evolved state is ``threshold`` radians from
    ``psi0``; the mean is the trapezoid time-average of the energy spread along
    the trajectory. With ``check_convergence`` the run is repeated at ``dt/2``
    and the case is inapplicable unless ``lhs`` agrees to ``rtol``.
    """
    hbar = hbar_of(scale)
    tol = relation_tolerance(hbar)
    tau, times, spreads = _first_crossing(H, psi0, dt, t_max, hbar, threshold)
    if tau is None:
        return RelationReport("mandelshtam_tamm_driven", 0.0, hbar, tol, status=INAPPLICABLE, context={"reason": "cap reached", "t_max": t_max, "dt": dt, "hbar": hbar})
    integral = float(np.trapezoid(spreads, times))
    ctx = {"tau": tau, "mean_std_h": integral / tau, "dt": dt, "steps": len(times) - 1, "hbar": hbar}
    status = ""
    if check_convergence:
        tau2, times2, spreads2 = _first_crossing(H, psi0, 0.5 * dt, t_max, hbar, threshold)
        integral2 = float(np.trapezoid(spreads2, times2)) if tau2 is not None else math.inf
        change = abs(integral2 - integral) / max(abs(integral), 1e-300)
        ctx.update({"refined_lhs": integral2, "refinement_change": change, "converged": change < rtol})
        if not change < rtol:
            status = INAPPLICABLE
            ctx["reason"] = "unconverged"
    return RelationReport("mandelshtam_tamm_driven", integral, hbar, tol, status=status, context=ctx)


@dataclass(frozen=True)
class RelationInfo:
    relation_id: str
    equation: str
    statement: str
    premise: str
    evaluator: Callable


RELATIONS: dict[str, RelationInfo] = {
    info.relation_id: info
    for info in (
        RelationInfo("kennard", "Eq. (2)", "std(X) std(P) >= hbar/2", "[X,P] = i hbar on the support of the state", kennard),
        RelationInfo("uncertainty_xp", "Eq. (12)", "width(X) std(P) >= hbar", "P generates shifts of the X spectral measure", uncertainty_xp),
        RelationInfo("ratio_check", "Eq. (12) remark", "2 std(X) / width(X) >= sqrt(1 - sin 1)", "non-degenerate width", ratio_check),
        RelationInfo("uncertainty_angle", "Eq. (13)", "width(Phi) >= min(hbar/std(J), pi)", "J generates rotations of the angle measure", uncertainty_angle),
        RelationInfo("judge", "Eq. (14)", "D std(J) >= (hbar/2)(1 - 3 D^2/pi^2)", "angle operator with spectrum in [-pi, pi]", judge),
        RelationInfo("mandelshtam_tamm_closed", "Eq. (15)", "|dt| std(H) >= hbar at a substantial change", "time-independent H", mandelshtam_tamm_closed),
        RelationInfo("mandelshtam_tamm_driven", "Eq. (16)", "tau mean(std(H(t))) >= hbar", "trajectory reaches one radian", mandelshtam_tamm_driven),
    )
}
