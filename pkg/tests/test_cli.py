import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from pivotal.cli import RunConfig, main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
FOUR = CONFIGS / "nixon-four"
CLASSICAL = CONFIGS / "nixon-classical"


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_parse():
    r = run("parse", "~(a | b) & c | d")
    assert r.exit_code == 0 and r.output.strip() == "~(a | b) & c | d"
    assert run("parse", "a & (b").exit_code == 2


@pytest.mark.parametrize("gamma,alpha,code", [("r", "~p", 0), ("~r, r|q", "q", 1)])
def test_entail_nixon_four(gamma, alpha, code):
    r = run("entail", "--structure", "four", "--atoms", "r,q,p", "--pivot", str(FOUR / "nixon.pivot"),
            "--mode", "pivotal", "--gamma", gamma, "--alpha", alpha)
    assert r.exit_code == code
    assert r.output.strip() == ("true" if code == 0 else "false")


def test_plain_is_an_alias_for_pivotal():
    r = run("entail", "--config", str(FOUR / "config.json"), "--mode", "plain", "--gamma", "r", "--alpha", "~p")
    assert r.exit_code == 0


@pytest.mark.parametrize("kind", ["classical", "four", "j3"])
def test_entail_basic_true(kind):
    assert run("entail", "--structure", kind, "--atoms", "p", "--gamma", "", "--alpha", "true").exit_code == 0


@pytest.mark.parametrize("folder,batch,mode", [
    (CLASSICAL, "queries.batch", None),
    (FOUR, "queries.batch", None),
    (FOUR, "discriminative.batch", "discriminative"),
])
def test_bundled_batches_meet_every_expectation(folder, batch, mode):
    args = ["entail", "--config", str(folder / "config.json"), "--batch", str(folder / batch), "--format", "json"]
    if mode:
        args += ["--mode", mode]
    r = run(*args)
    out = json.loads(r.output)
    assert r.exit_code == 0 and out["all_matched"]
    assert all(q["expected"] is not None for q in out["queries"])


def test_batch_reports_unmet_expectations(tmp_path):
    (tmp_path / "g.txt").write_text("p\n", encoding="utf-8")
    (tmp_path / "q.batch").write_text("g.txt :: ~p  # expect: true\n", encoding="utf-8")
    r = run("entail", "--structure", "four", "--atoms", "p", "--batch", str(tmp_path / "q.batch"))
    assert r.exit_code == 1 and "expected true" in r.output


def test_entail_xlogic(tmp_path):
    e = tmp_path / "e.txt"
    e.write_text("p\n", encoding="utf-8")
    base = ["entail", "--structure", "classical", "--atoms", "p,q", "--mode", "xlogic", "--pertinence", str(e)]
    assert run(*base, "--gamma", "", "--alpha", "q").exit_code == 0
    assert run(*base, "--gamma", "", "--alpha", "p").exit_code == 1
    assert run(*base, "--close", "--gamma", "", "--alpha", "p").exit_code == 1


def test_models():
    r = run("models", "--structure", "classical", "--atoms", "p", "--gamma", "p")
    assert r.output.strip() == "p=t"
    r = run("models", "--structure", "four", "--atoms", "p", "--gamma", "p, ~p")
    assert r.output.strip() == "p=B"
    r = run("models", "--structure", "j3", "--atoms", "p", "--gamma", "false", "--format", "json")
    assert json.loads(r.output)["models"] == []


def test_theory_and_h_sets():
    r = run("theory", "--structure", "j3", "--atoms", "p", "--gamma", "p", "--format", "json")
    out = json.loads(r.output)
    assert r.exit_code == 0 and "p" in out["concluded"] and "~p" not in out["concluded"]
    r = run("theory", "--structure", "four", "--atoms", "p", "--gamma", "p", "--h-sets", "--format", "json")
    assert "h_stages" in json.loads(r.output)


def test_check_assumptions():
    r = run("check-assumptions", "--structure", "four", "--atoms", "p", "--format", "json")
    rows = {a["assumption"]: a for a in json.loads(r.output)["assumptions"]}
    assert not rows["A2"]["holds"] and rows["A2"]["counterexample"]["alpha"] == "p & ~p"
    assert all(rows[k]["holds"] for k in ("A0", "A1", "A3", "A4"))


def test_clone_info():
    r = run("clone-info", "--structure", "j3", "--atoms", "p,q", "--format", "json")
    info = json.loads(r.output)
    assert info["classes"] == 84 and info["definable_sets"] == 48


def test_verify_and_report(tmp_path):
    report = tmp_path / "r.json"
    r = run("verify", "rep-general", "--structure", "classical", "--atoms", "p", "--report", str(report))
    assert r.exit_code == 0 and "exhaustive" in r.output
    data = json.loads(report.read_text())
    assert data["mode"] == "exhaustive" and data["failures"] == []


def test_verify_refuses_unmet_assumptions():
    r = run("verify", "rep-disc", "--structure", "four", "--atoms", "p", "--part", "2")
    assert r.exit_code == 2 and "(A2) not satisfied" in r.output


def test_verify_xlogic_j3():
    r = run("verify", "xlogic", "--structure", "j3", "--atoms", "p")
    assert r.exit_code == 0 and "exhaustive" in r.output


def test_verify_reports_are_byte_identical(tmp_path):
    args = ["verify", "rep-disc", "--structure", "j3", "--atoms", "p", "--samples", "300", "--seed", "3",
            "--omit-runtime"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(*args, "--report", str(a)).exit_code == 0
    assert run(*args, "--report", str(b)).exit_code == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("args", [
    ["entail", "--structure", "four", "--atoms", "p", "--gamma", "z", "--alpha", "p"],
    ["entail", "--structure", "four", "--atoms", "p", "--mode", "pivotal", "--alpha", "p"],
    ["entail", "--structure", "four", "--atoms", "p", "--gamma", "p &", "--alpha", "p"],
    ["models", "--structure", "four", "--atoms", "p", "--universe-cap", "2"],
    ["theory", "--structure", "four", "--atoms", "p,q", "--clone-cap", "10"],
])
def test_errors_exit_two(args):
    r = run(*args)
    assert r.exit_code == 2 and "error:" in r.output


def test_config_files(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("structure = j3\natoms = p, q\nseed = 4\npivot = i.pivot\n", encoding="utf-8")
    loaded = RunConfig.load(cfg)
    assert loaded.atoms == ("p", "q") and loaded.seed == 4 and loaded.pivot == str(tmp_path / "i.pivot")
    with pytest.raises(ValueError):
        RunConfig(structure="modal")
    with pytest.raises(ValueError):
        RunConfig(samples=0)
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": 1}', encoding="utf-8")
    with pytest.raises(ValueError):
        RunConfig.load(bad)
