"""Report builder, JSON/CSV serialization, and the command-line entry point."""

import json

import pytest

from hkspread import (
    Report,
    RunConfig,
    ScriptError,
    parse_script,
    report_csv,
    report_json,
    run_script,
)
from hkspread.cli import main
from hkspread.runner import error_document, report_document

SESSION = """
char 2
vars x y
ideal m = x, y
ideal J = x^2, y^3
gb J
length J
colon m J
ehk J e_max=2
spread J a=m q0=1
identity self m q=2
independent m
"""


def test_report_shape_and_ok():
    rep = run_script(parse_script(SESSION))
    assert isinstance(rep, Report)
    assert rep.ok
    doc = report_document(rep, include_timing=False)
    assert doc["tool"] == "hkspread"
    assert doc["schema"] == 1
    assert doc["ring"] == {
        "characteristic": 2, "variables": ["x", "y"],
        "relations": [], "dimension": 2,
    }
    assert doc["bindings"] == [
        {"name": "m", "generators": ["x", "y"]},
        {"name": "J", "generators": ["x^2", "y^3"]},
    ]
    kinds = [r["kind"] for r in doc["results"]]
    assert kinds == ["gb", "length", "colon", "ehk", "spread",
                     "identity", "independent"]
    assert all(r["status"] == "ok" for r in doc["results"])
    assert "timing" not in doc
    timed = report_document(rep)
    assert set(timed["timing"]) == {"total_seconds", "per_command_seconds"}


def test_rationals_serialize_as_num_den():
    rep = run_script(parse_script(SESSION))
    doc = report_document(rep, include_timing=False)
    ehk = next(r for r in doc["results"] if r["kind"] == "ehk")["data"]
    assert ehk["value"] == {"num": 6, "den": 1}
    assert ehk["value_float"] == 6.0
    assert ehk["samples"][0] == {
        "e": 0, "q": 1, "colength": 6, "normalized": {"num": 6, "den": 1},
    }
    spread = next(r for r in doc["results"] if r["kind"] == "spread")["data"]
    assert spread["estimate"] == 2
    assert spread["ehk_a"] == {"num": 1, "den": 1}
    assert spread["cells"][0]["ratio"] == {"num": 2, "den": 1}
    assert spread["q0_schedule"] == [1]


def test_identity_and_independent_payloads():
    rep = run_script(parse_script(SESSION))
    doc = report_document(rep, include_timing=False)
    ident = next(r for r in doc["results"] if r["kind"] == "identity")["data"]
    assert ident["name"] == "self-product"
    assert ident["pass"] is True
    row = ident["rows"][0]
    assert row["label"] == "self-product[q=2]"
    assert row["lhs"] == row["rhs"] == {"num": 6, "den": 1}
    assert row["residual"] == {"num": 0, "den": 1}
    indep = next(r for r in doc["results"] if r["kind"] == "independent")["data"]
    assert indep["verdict"] == "consistent"
    assert "finite-q evidence only" in indep["caveat"]
    assert [g["generator"] for g in indep["generators"]] == ["x", "y"]


def test_determinism():
    a = report_document(run_script(parse_script(SESSION)), include_timing=False)
    b = report_document(run_script(parse_script(SESSION)), include_timing=False)
    assert a == b
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_error_isolation_keeps_later_commands():
    rep = run_script(parse_script(
        "char 2; vars x y; ideal P = x; spread P a=P; length P"))
    assert not rep.ok
    doc = report_document(rep, include_timing=False)
    first, second = doc["results"]
    assert first["status"] == "error"
    assert first["error"]["type"] == "PreconditionError"
    assert second["status"] == "ok"
    assert second["data"]["finite"] is False


def test_failed_identity_marks_report_not_ok():
    rep = run_script(parse_script(
        "char 2; vars x y; ideal m = x, y; ideal J = x^2, y^3; "
        "identity product J m ell=2 q=2"))
    assert not rep.ok
    data = report_document(rep, include_timing=False)["results"][0]["data"]
    assert data["pass"] is False
    assert data["rows"][0]["pass"] is False


def test_report_json_round_trips():
    rep = run_script(parse_script(SESSION))
    doc = json.loads(report_json(rep, include_timing=False))
    assert doc == report_document(rep, include_timing=False)


def test_csv_layout():
    rep = run_script(parse_script(SESSION))
    lines = report_csv(rep).splitlines()
    assert lines[0] == "command,section,label,q0,e,q,value,num,den,pass"
    assert "gb J,basis,0,,,,x^2,,," in lines
    assert "length J,length,,,,,6,,," in lines
    assert "ehk J e_max=2,estimate,monomial-exact,,,,6.0,6,1," in lines
    assert "ehk J e_max=2,sample,,,0,1,6,6,1," in lines
    assert "identity self m q=2,row,self-product[q=2],,,,,0,1,True" in lines
    spread_cells = [l for l in lines if l.startswith("spread J") and ",cell," in l]
    assert len(spread_cells) == 4


def test_csv_infinite_length():
    rep = run_script(parse_script("char 2; vars x y; ideal P = x; length P"))
    assert "length P,length,,,,,inf,,," in report_csv(rep).splitlines()


def test_run_config_guard_applies():
    script = parse_script(
        "char 7; vars x y z; "
        "ideal I = x^2 + y*z, y^2 + x*z, z^2 + x*y; gb I")
    rep = run_script(script, RunConfig(max_gb_steps=2))
    assert not rep.ok
    assert rep.results[0].error["type"] == "ResourceLimitError"
    assert run_script(script).ok


def test_error_document_for_parse_error():
    with pytest.raises(ScriptError) as info:
        parse_script("char 4; vars x")
    doc = error_document(info.value)
    assert doc["ok"] is False
    assert doc["error"] == {
        "type": "ScriptError", "message": "characteristic must be prime",
        "line": 1, "column": 6,
    }


@pytest.fixture()
def scripts(tmp_path):
    ok = tmp_path / "ok.hks"
    ok.write_text("char 2\nvars x y\nideal J = x, y\nlength J\n")
    fail = tmp_path / "fail.hks"
    fail.write_text("char 2\nvars x y\nideal J = x\nspread J a=J\n")
    bad = tmp_path / "bad.hks"
    bad.write_text("char 4\nvars x\n")
    hard = tmp_path / "hard.hks"
    hard.write_text("char 7\nvars x y z\n"
                    "ideal I = x^2 + y*z, y^2 + x*z, z^2 + x*y\ngb I\n")
    return {"ok": ok, "fail": fail, "bad": bad, "hard": hard,
            "missing": tmp_path / "missing.hks"}


def test_cli_exit_codes(scripts, capsys):
    assert main(["run", str(scripts["ok"])]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True
    assert main(["run", str(scripts["fail"])]) == 1
    assert json.loads(capsys.readouterr().out)["ok"] is False
    assert main(["run", str(scripts["bad"])]) == 2
    err_doc = json.loads(capsys.readouterr().out)
    assert err_doc["error"]["message"] == "characteristic must be prime"
    assert main(["run", str(scripts["missing"])]) == 2
    assert "no such script file" in capsys.readouterr().err


def test_cli_reads_stdin(scripts, capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(scripts["ok"].read_text()))
    assert main(["run", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_cli_csv_format(scripts, capsys):
    assert main(["run", str(scripts["ok"]), "--format", "csv"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "command,section,label,q0,e,q,value,num,den,pass"


def test_cli_env_override_and_flag_precedence(scripts, capsys, monkeypatch):
    monkeypatch.setenv("HKSPREAD_MAX_GB_STEPS", "2")
    assert main(["run", str(scripts["hard"])]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["config"]["max_gb_steps"] == 2
    assert doc["results"][0]["error"]["type"] == "ResourceLimitError"
    # an explicit flag wins over the environment
    assert main(["run", str(scripts["hard"]), "--max-gb-steps", "500000"]) == 0
    assert json.loads(capsys.readouterr().out)["config"]["max_gb_steps"] == 500000


def test_cli_max_exponent_env(scripts, capsys, monkeypatch):
    monkeypatch.setenv("HKSPREAD_MAX_EXPONENT", "4")
    path = scripts["ok"].parent / "deep.hks"
    path.write_text(
        "char 2\nvars x y\nideal J = x, y\nehk J e_max=4 method=fit\n")
    assert main(["run", str(path)]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["results"][0]["error"]["type"] == "ResourceLimitError"
