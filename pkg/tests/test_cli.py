import csv
import json
import math

import pytest

from certainty import cli


def write(tmp_path, text, name="cfg.json"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


GOOD = """{
  "schema": "certainty-scenario/1",
  "id": "tiny",
  "seed": 4,
  "model": {"type": "rotor", "m_max": 6},
  "states": [{"kind": "eigenstate", "m": 1}, {"kind": "random", "count": 3}],
  "relations": [{"id": "uncertainty_angle"}, {"id": "judge", "scan": 128}]
}
"""


def test_list_relations(capsys):
    assert cli.main(["list-relations"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 7
    assert any("uncertainty_xp → Eq. (12)" in row for row in out)
    assert any("judge → Eq. (14)" in row for row in out)
    assert [row.split()[0] for row in out] == sorted(row.split()[0] for row in out)


def test_selfcheck(capsys):
    assert cli.main(["selfcheck"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_selfcheck_fault_injection(capsys):
    assert cli.main(["selfcheck", "--perturb", "tail_probability=0.08"]) == 1
    assert "tail_probability" in capsys.readouterr().err


def test_run_writes_artifacts(tmp_path):
    out = tmp_path / "out"
    assert cli.main(["run", write(tmp_path, GOOD), "--out", str(out)]) == 0
    doc = json.loads((out / "reports.json").read_text())
    assert doc["scenario"] == "tiny" and len(doc["cases"]) == 4
    assert [c["state"].get("seed") for c in doc["cases"]] == [None, 5, 6, 7]
    rows = list(csv.DictReader((out / "summary.csv").open()))
    assert [r["relation_id"] for r in rows] == ["uncertainty_angle", "judge"]
    for r in rows:
        assert int(r["pass"]) + int(r["fail"]) + int(r["inapplicable"]) + int(r["degenerate"]) == int(r["cases"])
    assert (out / "curves" / "judge.csv").read_text().startswith("case,state,lhs,rhs,slack,status\n")


def test_run_env_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "env_out"))
    assert cli.main(["run", write(tmp_path, GOOD)]) == 0
    assert (tmp_path / "env_out" / "reports.json").exists()


def test_seed_override_and_workers(tmp_path):
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    cfg = write(tmp_path, GOOD)
    cli.main(["run", cfg, "--out", str(a)])
    cli.main(["run", cfg, "--out", str(b), "--workers", "3"])
    cli.main(["run", cfg, "--out", str(c), "--seed", "99"])
    assert (a / "reports.json").read_bytes() == (b / "reports.json").read_bytes()
    assert (a / "reports.json").read_bytes() != (c / "reports.json").read_bytes()


@pytest.mark.parametrize(
    "text, needle",
    [
        ('{"schema": "certainty-scenario/1",\n "id": "x",\n "bogus": 1}', "line 3"),
        ('{"schema": "certainty-scenario/0", "id": "x"}', "schema"),
        ('{\n "schema": "certainty-scenario/1",\n "id": "x",\n', "line"),
        (GOOD.replace('"scan": 128', '"scan": 128, "scna": 1'), "line 7"),
        (GOOD.replace('"judge"', '"jugde"'), "unknown relation"),
        (GOOD.replace('"uncertainty_angle"', '"kennard"'), "does not apply"),
        (GOOD.replace('"m_max": 6', '"m_max": 1'), "rotor"),
        (GOOD.replace('"count": 3', '"count": 0'), "count"),
    ],
)
def test_config_errors(tmp_path, capsys, text, needle):
    out = tmp_path / "never"
    assert cli.main(["run", write(tmp_path, text), "--out", str(out)]) == 2
    assert needle in capsys.readouterr().err
    assert not out.exists()
    assert not any(p.name.startswith(".certainty-") for p in tmp_path.iterdir())


def test_missing_config(tmp_path):
    assert cli.main(["run", str(tmp_path / "nope.json")]) == 2


def test_failure_exit_code(tmp_path, monkeypatch):
    # an evaluator that reports a violated inequality must turn into exit code 1
    from certainty.reports import RelationReport

    def broken(sc, built, case):
        return [RelationReport(o["id"], 0.0, 1.0, 1e-9) for o in sc.relations]

    monkeypatch.setattr(cli, "evaluate", broken)
    assert cli.main(["run", write(tmp_path, GOOD), "--out", str(tmp_path / "o")]) == 1


def test_dump_json_non_finite():
    text = cli.dump_json({"b": math.inf, "a": [math.nan, -math.inf, 1.5]})
    assert json.loads(text) == {"a": ["nan", "-inf", 1.5], "b": "inf"}
    assert text.index('"a"') < text.index('"b"')


def test_bundled_scenarios_listed():
    names = cli.bundled_scenarios()
    assert {"two_level_saturation", "gaussian_xp"} <= set(names)
    for name in names:
        text, _ = cli._resolve_config(name)
        cli.parse_scenario(text)


def test_two_level_saturation_summary(tmp_path):
    out = tmp_path / "tl"
    assert cli.main(["run", "two_level_saturation", "--out", str(out)]) == 0
    rows = {r["relation_id"]: r for r in csv.DictReader((out / "summary.csv").open())}
    assert abs(float(rows["mandelshtam_tamm_closed"]["min_slack"])) <= 1e-9
    assert (out / "curves" / "orbit_case0.csv").exists()


def test_gaussian_xp_column(tmp_path):
    out = tmp_path / "g"
    assert cli.main(["run", "gaussian_xp", "--out", str(out)]) == 0
    rows = list(csv.DictReader((out / "curves" / "uncertainty_xp.csv").open()))
    for r in rows:
        assert float(r["lhs"]) == pytest.approx(1.41003612874, rel=0.02)
