"""Command-line front end: run scenario files, list relations, self-check.

Scenario files are JSON objects::

    {
      "schema": "certainty-scenario/1",
      "id": "gaussian_xp",
      "seed": 0,
      "model": {"type": "lattice", "N": 512, "L": 512.0},
      "states": [{"kind": "gaussian", "sigma": 40.0}],
      "relations": [{"id": "uncertainty_xp"}, {"id": "kennard"}]
    }

Every state entry expands into one or more cases (``"kind": "random"`` takes
a ``count``); every relation is evaluated on every case. Random case ``i``
draws from ``numpy.random.default_rng(seed + i)``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import shutil
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from . import constants
from .geometry import quantum_angle
from .hilbert import HermitianOperator, PlanckScale, StateVector, jacobi_eigh, std_dev
from .models import (
    bimodal_packet,
    gaussian_packet,
    make_lattice,
    make_rabi,
    make_rotor,
    make_spin,
    random_localized_state,
    rotor_eigenstate,
    rotor_superposition,
    spin_coherent_state,
    two_level,
    von_mises_state,
)
from .relations import (
    RELATIONS,
    judge,
    kennard,
    mandelshtam_tamm_closed,
    mandelshtam_tamm_driven,
    ratio_check,
    uncertainty_angle,
    uncertainty_xp,
)
from .reports import STATUSES, RelationReport
from .spectral import shift_covariance_check
from .unitary import DrivenHamiltonian, orbit_angles, propagate_driven

SCHEMA = "certainty-scenario/1"
OUT_ENV = "CERTAINTY_OUT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


# -- config validation ---------------------------------------------------------

# model type -> (required, optional with defaults)
MODEL_KEYS: dict[str, dict[str, Any]] = {
    "lattice": {"N": None, "L": None},
    "rotor": {"m_max": None},
    "spin": {"j": None},
    "two_level": {"splitting": 1.0},
    "rabi": {"rabi_frequency": None, "drive_frequency": None, "detuning": 0.0, "polarization": "linear"},
}

STATE_KEYS: dict[str, dict[str, dict[str, Any]]] = {
    "lattice": {
        "gaussian": {"x0": 0.0, "p0": 0.0, "sigma": None},
        "bimodal": {"separation": None, "weight": 0.5, "sigma": None, "x0": 0.0},
        "random": {"count": None, "max_width": None},
    },
    "rotor": {
        "eigenstate": {"m": 0},
        "superposition": {"ms": None, "amplitudes": None},
        "von_mises": {"center": 0.0, "kappa": 4.0, "m0": 0},
        "random": {"count": None},
    },
    "spin": {"coherent": {"theta": None, "phi": 0.0}, "basis": {"index": 0}, "random": {"count": None}},
    "two_level": {"superposition": {}, "basis": {"index": 0}, "random": {"count": None}},
    "rabi": {"ground": {}, "random": {"count": None}},
}

RELATION_KEYS: dict[str, dict[str, Any]] = {
    "kennard": {"min_gauge": 0.999},
    "uncertainty_xp": {"q": constants.TAIL_PROBABILITY},
    "ratio_check": {"q": constants.TAIL_PROBABILITY},
    "uncertainty_angle": {"q": constants.TAIL_PROBABILITY},
    "judge": {"scan": 512},
    "mandelshtam_tamm_closed": {"threshold": constants.SUBSTANTIAL_ANGLE, "search_cap": None, "axis": None},
    "mandelshtam_tamm_driven": {"threshold": constants.SUBSTANTIAL_ANGLE, "dt": 1e-3, "t_max": 100.0},
}

RELATION_MODELS: dict[str, tuple[str, ...]] = {
    "kennard": ("lattice",),
    "uncertainty_xp": ("lattice",),
    "ratio_check": ("lattice",),
    "uncertainty_angle": ("rotor",),
    "judge": ("rotor",),
    "mandelshtam_tamm_closed": ("spin", "two_level", "rabi"),
    "mandelshtam_tamm_driven": ("two_level", "rabi"),
}

TOP_KEYS = {"schema", "id", "seed", "hbar", "model", "states", "relations", "description"}


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return i
    return None


def _fill(section: dict, allowed: dict[str, Any], where: str, text: str, skip=("type", "kind", "id")) -> dict:
    out = {}
    for k in section:
        if k not in allowed and k not in skip:
            raise ConfigError(f"unknown key {k!r} in {where}", _line_of(text, k))
    for k, default in allowed.items():
        if k in section:
            out[k] = section[k]
        elif default is None and k not in ("amplitudes", "max_width", "search_cap", "axis"):
            raise ConfigError(f"missing key {k!r} in {where}", _line_of(text, where.split()[0]))
        else:
            out[k] = default
    return out


@dataclass
class Scenario:
    id: str
    seed: int
    hbar: float
    model_type: str
    model: dict[str, Any]
    states: list[dict[str, Any]]
    relations: list[dict[str, Any]]
    description: str = ""


def parse_scenario(text: str) -> Scenario:
    """Validate a scenario document; raises :class:`ConfigError` with a line anchor."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, exc.lineno) from None
    if not isinstance(doc, dict):
        raise ConfigError("top level must be a JSON object", 1)
    for k in doc:
        if k not in TOP_KEYS:
            raise ConfigError(f"unknown key {k!r}", _line_of(text, k))
    if doc.get("schema") != SCHEMA:
        raise ConfigError(f"schema must be {SCHEMA!r}", _line_of(text, "schema") or 1)
    sid = doc.get("id")
    if not isinstance(sid, str) or not sid or not all(c.isalnum() or c == "_" for c in sid):
        raise ConfigError("id must be a non-empty [A-Za-z0-9_] string", _line_of(text, "id") or 1)
    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed must be an integer", _line_of(text, "seed"))
    hbar = doc.get("hbar", 1.0)
    if not isinstance(hbar, (int, float)) or not hbar > 0:
        raise ConfigError("hbar must be positive", _line_of(text, "hbar"))

    model = doc.get("model")
    if not isinstance(model, dict) or model.get("type") not in MODEL_KEYS:
        raise ConfigError(f"model.type must be one of {sorted(MODEL_KEYS)}", _line_of(text, "model") or 1)
    mtype = model["type"]
    mparams = _fill(model, MODEL_KEYS[mtype], "model", text)

    states = doc.get("states")
    if not isinstance(states, list) or not states:
        raise ConfigError("states must be a non-empty list", _line_of(text, "states") or 1)
    parsed_states = []
    for s in states:
        kinds = STATE_KEYS[mtype]
        if not isinstance(s, dict) or s.get("kind") not in kinds:
            raise ConfigError(f"state kind must be one of {sorted(kinds)} for model {mtype!r}", _line_of(text, "kind") or _line_of(text, "states"))
        params = _fill(s, kinds[s["kind"]], "states entry", text)
        if s["kind"] == "random" and (not isinstance(params["count"], int) or params["count"] < 1):
            raise ConfigError("random count must be a positive integer", _line_of(text, "count"))
        parsed_states.append({"kind": s["kind"], **params})

    rels = doc.get("relations")
    if not isinstance(rels, list) or not rels:
        raise ConfigError("relations must be a non-empty list", _line_of(text, "relations") or 1)
    parsed_rels = []
    for r in rels:
        rid = r.get("id") if isinstance(r, dict) else None
        if rid not in RELATIONS:
            raise ConfigError(f"unknown relation {rid!r}", _line_of(text, str(rid)) or _line_of(text, "relations"))
        if mtype not in RELATION_MODELS[rid]:
            raise ConfigError(f"relation {rid!r} does not apply to model {mtype!r}", _line_of(text, rid))
        parsed_rels.append({"id": rid, **_fill(r, RELATION_KEYS[rid], f"relation {rid}", text)})
    return Scenario(sid, seed, float(hbar), mtype, mparams, parsed_states, parsed_rels, str(doc.get("description", "")))


# -- model construction and case evaluation ------------------------------------


@dataclass
class Case:
    index: int
    spec: dict[str, Any]
    psi: StateVector


@dataclass
class Built:
    system: Any
    cases: list[Case]
    extra: dict[str, Any] = field(default_factory=dict)


def _random_state(dim: int, rng: np.random.Generator, params: dict) -> StateVector:
    if params.get("max_width"):
        return random_localized_state(dim, rng, params["max_width"])
    return StateVector.random(dim, rng)


def build(sc: Scenario, seed: int) -> Built:
    scale = PlanckScale(sc.hbar)
    m = sc.model
    try:
        if sc.model_type == "lattice":
            system = make_lattice(int(m["N"]), float(m["L"]), scale)
        elif sc.model_type == "rotor":
            system = make_rotor(int(m["m_max"]), scale)
        elif sc.model_type == "spin":
            system = make_spin(m["j"], scale)
        elif sc.model_type == "two_level":
            system = two_level(float(m["splitting"]), scale)
        else:
            system = make_rabi(float(m["rabi_frequency"]), float(m["drive_frequency"]), float(m["detuning"]), m["polarization"], scale)
    except ValueError as exc:
        raise ConfigError(f"model: {exc}") from None

    dim = {"two_level": 2, "rabi": 2}.get(sc.model_type) or system.dim
    cases: list[Case] = []

    def add(spec, psi):
        cases.append(Case(len(cases), spec, psi))

    for s in sc.states:
        kind = s["kind"]
        try:
            if kind == "random":
                for _ in range(s["count"]):
                    case_seed = seed + len(cases)
                    add({**s, "seed": case_seed}, _random_state(dim, np.random.default_rng(case_seed), s))
            elif kind == "gaussian":
                add(s, gaussian_packet(system, s["x0"], s["p0"], s["sigma"]))
            elif kind == "bimodal":
                add(s, bimodal_packet(system, s["separation"], s["weight"], s["sigma"], s["x0"]))
            elif kind == "eigenstate":
                add(s, rotor_eigenstate(system, s["m"]))
            elif kind == "superposition" and sc.model_type == "rotor":
                add(s, rotor_superposition(system, s["ms"], s["amplitudes"]))
            elif kind == "superposition":
                add(s, system[1])
            elif kind == "von_mises":
                add(s, von_mises_state(system, s["center"], s["kappa"], s["m0"]))
            elif kind == "coherent":
                add(s, spin_coherent_state(system, s["theta"], s["phi"]))
            elif kind == "basis":
                add(s, StateVector.basis(dim, s["index"]))
            elif kind == "ground":
                add(s, system.ground)
        except (ValueError, IndexError, TypeError) as exc:
            raise ConfigError(f"state {kind!r}: {exc}") from None
    return Built(system, cases)


def _closed_generator(sc: Scenario, system, opts) -> HermitianOperator:
    if sc.model_type == "spin":
        axis = opts.get("axis") or [0.0, 0.0, 1.0]
        return HermitianOperator(sum(float(a) * g.matrix for a, g in zip(axis, (system.J1, system.J2, system.J3))))
    if sc.model_type == "two_level":
        return system[0]
    return system.static


def _driven(sc: Scenario, system) -> DrivenHamiltonian:
    if sc.model_type == "two_level":
        H = system[0]
        return DrivenHamiltonian(lambda t: H, 2, label="constant")
    return system.hamiltonian


def evaluate(sc: Scenario, built: Built, case: Case) -> list[RelationReport]:
    scale = PlanckScale(sc.hbar)
    system, psi = built.system, case.psi
    out = []
    for opts in sc.relations:
        rid = opts["id"]
        if rid == "kennard":
            rep = kennard(psi, system.X, system.P, scale, min_gauge=opts["min_gauge"])
        elif rid == "uncertainty_xp":
            rep = uncertainty_xp(psi, system.X_measure, system.P, scale, q=opts["q"])
        elif rid == "ratio_check":
            rep = ratio_check(psi, system.X_measure, q=opts["q"]).as_relation()
        elif rid == "uncertainty_angle":
            rep = uncertainty_angle(psi, system.Phi_measure, system.J, scale, q=opts["q"])
        elif rid == "judge":
            rep = judge(psi, system.Phi, system.J, scale, phi_sq=system.Phi_sq, scan=opts["scan"])
        elif rid == "mandelshtam_tamm_closed":
            H = _closed_generator(sc, system, opts)
            rep = mandelshtam_tamm_closed(psi, H, scale, search_cap=opts["search_cap"], threshold=opts["threshold"])
        else:
            rep = mandelshtam_tamm_driven(_driven(sc, system), psi, scale, opts["dt"], t_max=opts["t_max"], threshold=opts["threshold"])
        out.append(rep)
    return out


# -- serialization -------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        f = float(x)
        return f if math.isfinite(f) else repr(f)
    if isinstance(x, complex):
        return [_jsonable(x.real), _jsonable(x.imag)]
    if x is None or isinstance(x, str):
        return x
    return str(x)


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=1, allow_nan=False, ensure_ascii=False) + "\n"


def _csv(rows: list[list[Any]], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def summarize(sc: Scenario, results: list[list[RelationReport]]) -> list[dict[str, Any]]:
    rows = []
    for k, opts in enumerate(sc.relations):
        reps = [r[k] for r in results]
        counts = {s: sum(1 for r in reps if r.status == s) for s in STATUSES}
        asserted = [(i, r) for i, r in enumerate(reps) if r.status in ("pass", "fail")]
        worst = min(asserted, key=lambda ir: ir[1].slack) if asserted else None
        rows.append(
            {
                "relation_id": opts["id"],
                "cases": len(reps),
                **counts,
                "min_slack": worst[1].slack if worst else math.nan,
                "worst_case": worst[0] if worst else -1,
                "mean_lhs_over_rhs": float(np.mean([r.lhs / r.rhs for _, r in asserted if r.rhs])) if asserted else math.nan,
            }
        )
    return rows


def curves(sc: Scenario, built: Built, results: list[list[RelationReport]]) -> dict[str, str]:
    """Plot-ready CSV tables keyed by file name."""
    files = {}
    for k, opts in enumerate(sc.relations):
        rid = opts["id"]
        rows = [[c.index, c.spec["kind"], r[k].lhs, r[k].rhs, r[k].slack, r[k].status] for c, r in zip(built.cases, results)]
        files[f"{rid}.csv"] = _csv(rows, ["case", "state", "lhs", "rhs", "slack", "status"])
    ids = [o["id"] for o in sc.relations]
    if "kennard" in ids and "uncertainty_xp" in ids:
        ik, ix = ids.index("kennard"), ids.index("uncertainty_xp")
        hbar = sc.hbar
        rows = [
            [c.index, c.spec.get("separation", ""), r[ik].lhs / hbar, r[ix].lhs / hbar]
            for c, r in zip(built.cases, results)
        ]
        files["kennard_vs_uncertainty_xp.csv"] = _csv(rows, ["case", "separation", "kennard_lhs_over_hbar", "uncertainty_xp_lhs_over_hbar"])
    scale = PlanckScale(sc.hbar)
    for k, opts in enumerate(sc.relations):
        if opts["id"] != "mandelshtam_tamm_closed":
            continue
        H = _closed_generator(sc, built.system, opts)
        for c, r in zip(built.cases, results):
            if c.spec["kind"] == "random":
                continue
            t_end = 2.0 * r[k].context.get("t_star", 1.0)
            s = np.linspace(0.0, t_end, 257)
            ang = orbit_angles(-H, c.psi, s, scale)
            spread = std_dev(H, c.psi)
            rows = [[a, b, a * spread / sc.hbar] for a, b in zip(s, ang)]
            files[f"orbit_case{c.index}.csv"] = _csv(rows, ["t", "angle", "speed_bound"])
    for k, opts in enumerate(sc.relations):
        if opts["id"] != "mandelshtam_tamm_driven":
            continue
        H = _driven(sc, built.system)
        for c, r in zip(built.cases, results):
            tau = r[k].context.get("tau")
            if c.spec["kind"] == "random" or not tau:
                continue
            traj = propagate_driven(H, c.psi, 0.0, tau, opts["dt"], scale)
            rows = [[t, quantum_angle(c.psi, v), std_dev(H.matrix(t), v)] for t, v in zip(traj.times, traj.states)]
            files[f"driven_case{c.index}.csv"] = _csv(rows[:: max(1, len(rows) // 256)], ["t", "angle", "std_h"])
    return files


# -- commands ------------------------------------------------------------------


def _resolve_config(arg: str) -> tuple[str, str]:
    p = Path(arg)
    if p.is_file():
        return p.read_text(encoding="utf-8"), str(p)
    bundled = resources.files("certainty") / "scenarios" / f"{arg}.json"
    if bundled.is_file():
        return bundled.read_text(encoding="utf-8"), f"bundled:{arg}"
    raise ConfigError(f"no such config file or bundled scenario: {arg}")


def bundled_scenarios() -> list[str]:
    root = resources.files("certainty") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def run_scenario(sc: Scenario, *, seed: int | None = None, workers: int = 1):
    seed = sc.seed if seed is None else seed
    built = build(sc, seed)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(lambda c: evaluate(sc, built, c), built.cases))
    return built, results, seed


def cmd_run(args) -> int:
    try:
        text, source = _resolve_config(args.config)
        sc = parse_scenario(text)
    except ConfigError as exc:
        print(f"config error in {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(args.out or os.environ.get(OUT_ENV) or Path("certainty_out") / sc.id)
    start = time.perf_counter()
    try:
        built, results, seed = run_scenario(sc, seed=args.seed, workers=args.workers)
    except ConfigError as exc:
        print(f"config error in {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    wall = time.perf_counter() - start
    summary = summarize(sc, results)
    report = {
        "schema": SCHEMA,
        "scenario": sc.id,
        "seed": seed,
        "hbar": sc.hbar,
        "model": {"type": sc.model_type, **sc.model},
        "cases": [
            {"case": c.index, "state": c.spec, "reports": [r.to_dict() for r in reps]}
            for c, reps in zip(built.cases, results)
        ],
        "summary": summary,
    }
    header = ["relation_id", "cases", "pass", "fail", "inapplicable", "degenerate", "min_slack", "worst_case", "mean_lhs_over_rhs", "wall_time_s"]
    summary_csv = _csv([[row[h] for h in header[:-1]] + [round(wall, 3)] for row in summary], header)
    files = {"reports.json": dump_json(report), "summary.csv": summary_csv}
    files.update({f"curves/{name}": body for name, body in curves(sc, built, results).items()})

    out.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".certainty-", dir=out.parent))
    try:
        for name, body in files.items():
            dest = staging / name
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_text(body, encoding="utf-8", newline="\n")
        if out.exists():
            shutil.rmtree(out)
        staging.rename(out)
    finally:
        if staging.exists():
            shutil.rmtree(staging)

    failures = sum(row["fail"] for row in summary)
    for row in summary:
        print(f"{row['relation_id']:<26} pass={row['pass']} fail={row['fail']} inapplicable={row['inapplicable']} degenerate={row['degenerate']} min_slack={row['min_slack']:.3e}")
    print(f"wrote {out} ({len(built.cases)} cases, {wall:.2f} s)")
    return EXIT_FAIL if failures else EXIT_OK


def list_relations() -> str:
    heads = {rid: f"{rid} → {RELATIONS[rid].equation}" for rid in RELATIONS}
    width = max(len(h) for h in heads.values())
    lines = []
    for rid in sorted(RELATIONS):
        info = RELATIONS[rid]
        lines.append(f"{heads[rid]:<{width}}  {info.statement}  [premise: {info.premise}]")
    return "\n".join(lines)


def cmd_list(args) -> int:
    print(list_relations())
    return EXIT_OK


# Reference values to 12 significant digits, checked against the computed constants.
REFERENCE = {
    "tail_probability": 0.0792645075960518,
    "ratio_bound": 0.398157023286170,
    "correction_angle": 0.285398163397448,
    "gaussian_quantile": 1.41003612874050,
}


def selfcheck(perturb: dict[str, float] | None = None) -> list[tuple[str, bool, str]]:
    """Run the constant identities and oracle cross-checks; one tuple per check."""
    values = {
        "tail_probability": constants.TAIL_PROBABILITY,
        "ratio_bound": constants.RATIO_BOUND,
        "correction_angle": constants.CORRECTION_ANGLE,
        "gaussian_quantile": constants.GAUSSIAN_QUANTILE,
    }
    for k, v in (perturb or {}).items():
        if k not in values:
            raise KeyError(k)
        values[k] = v
    checks: list[tuple[str, bool, str]] = []

    def add(name: str, ok: bool, detail: str):
        checks.append((name, bool(ok), detail))

    ident = abs(math.asin(math.sqrt(values["tail_probability"])) - (math.pi / 4 - 0.5))
    add("correction_identity", ident <= 1e-12, f"|arcsin(sqrt(q)) - (pi/4 - 1/2)| = {ident:.3e}")
    add("correction_angle", abs(values["correction_angle"] - (math.pi / 4 - 0.5)) <= 1e-12, f"{values['correction_angle']!r}")
    for name in ("tail_probability", "ratio_bound", "correction_angle", "gaussian_quantile"):
        ref = REFERENCE[name]
        add(f"{name}_reference", abs(values[name] - ref) <= 1e-12 * max(1.0, abs(ref)), f"{values[name]!r} vs {ref!r}")
    ratio_identity = abs(values["ratio_bound"] ** 2 - 2 * values["tail_probability"])
    add("ratio_bound_identity", ratio_identity <= 1e-14, f"|bound^2 - 2q| = {ratio_identity:.3e}")

    rng = np.random.default_rng(20240601)
    a = rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24))
    a = a + a.conj().T
    w, v = jacobi_eigh(a)
    resid = float(np.max(np.abs(v @ np.diag(w) @ v.conj().T - a)) / np.max(np.abs(a)))
    add("eigensolver_roundtrip", resid <= 1e-10, f"relative residual {resid:.3e}")

    lat = make_lattice(64, 32.0)
    dev = shift_covariance_check(lat.X_measure, lat.P, lat.spacing)
    add("lattice_covariance", dev <= 1e-9, f"deviation {dev:.3e}")
    rot = make_rotor(16)
    dev = shift_covariance_check(rot.Phi_measure, rot.J, rot.grid_step)
    add("rotor_covariance", dev <= 1e-9, f"deviation {dev:.3e}")
    return checks


def cmd_selfcheck(args) -> int:
    perturb = {}
    for item in args.perturb or []:
        name, _, value = item.partition("=")
        perturb[name] = float(value)
    try:
        checks = selfcheck(perturb)
    except KeyError as exc:
        print(f"unknown constant {exc.args[0]!r}", file=sys.stderr)
        return EXIT_CONFIG
    bad = [c for c in checks if not c[1]]
    for name, ok, detail in checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
    if bad:
        print("selfcheck failed: " + ", ".join(c[0] for c in bad), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="certainty", description="Numerical checks of the certainty and uncertainty relations.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a scenario file or a bundled scenario by name")
    r.add_argument("config")
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--out", default=None, help=f"output directory (default: ${OUT_ENV} or ./certainty_out/<id>)")
    r.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    r.set_defaults(func=cmd_run)
    ls = sub.add_parser("list-relations", help="list relation evaluators")
    ls.set_defaults(func=cmd_list)
    sc = sub.add_parser("selfcheck", help="verify constants and numerical substrate")
    sc.add_argument("--perturb", action="append", metavar="NAME=VALUE", help=argparse.SUPPRESS)
    sc.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
