"""Command-line interface: exit codes, report rendering, JSON output
determinism, file arguments, and the independent verify subcommand."""

import json

import pytest
from click.testing import CliRunner

from ncequiv.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, args, **kw):
    return runner.invoke(main, args, catch_exceptions=False, **kw)


# ------------------------------------------------------------- worked examples


def test_stable_assoc_example(runner):
    result = invoke(runner, ["stable-assoc", "x*y*x*y+x*y+x",
                             "x*y^2*x+x*y+x"])
    assert result.exit_code == 0
    assert "y*x + 1" in result.output
    assert "x*y + 1" in result.output


def test_isospectral_example(runner):
    result = invoke(runner, ["isospectral", "x*y", "y*x"])
    assert result.exit_code == 0
    assert "x" in result.output


def test_similar_example_refuted_with_witness(runner):
    result = invoke(runner, ["similar", "x*y+1", "y*x+1", "--json"])
    assert result.exit_code == 1
    report = json.loads(result.output)
    assert report["exit_code"] == 1
    assert report["similar"] is False
    if report["witness"] is not None:
        assert report["witness"]["tuple"]["size"] >= 2


def test_stable_assoc_refuted_exit_one(runner):
    result = invoke(runner, ["stable-assoc", "x*y", "y*x", "--json"])
    assert result.exit_code == 1
    report = json.loads(result.output)
    assert report["witness"]["kind"] == "rank"
    assert report["witness"]["tuple"]["size"] == 2


# ------------------------------------------------------------------ exit codes


def test_exit_two_for_empty_intertwiner_space(runner):
    result = invoke(runner, ["intertwiner", "x", "y"])
    assert result.exit_code == 2


def test_exit_three_for_malformed_polynomial(runner):
    result = invoke(runner, ["isospectral", "x*++y", "x"])
    assert result.exit_code == 3
    assert "position 3" in result.output


def test_exit_three_for_bad_config(runner):
    result = invoke(runner, ["isospectral", "x", "y", "--samples", "0"])
    assert result.exit_code == 3


def test_exit_three_for_unknown_variable(runner):
    result = invoke(runner, ["eval", "x*z"])
    assert result.exit_code == 3
    assert "position" in result.output


# ------------------------------------------------------------------- rendering


def test_json_output_is_deterministic(runner):
    args = ["stable-assoc", "x*y*x*y+x*y+x", "x*y^2*x+x*y+x",
            "--seed", "3", "--json"]
    first = invoke(runner, args)
    second = invoke(runner, args)
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output


def test_json_report_envelope(runner):
    result = invoke(runner, ["isospectral", "x*y+1", "y*x+1", "--json"])
    report = json.loads(result.output)
    assert report["command"] == "isospectral"
    assert report["inputs"] == {"field": "Q", "vars": ["x", "y"],
                                "f": "x*y + 1", "g": "y*x + 1"}
    assert report["config"]["seed"] == 0


def test_text_output_mentions_verdict(runner):
    result = invoke(runner, ["norm-equiv", "x*y+i*x", "i*x*y-x",
                             "--field", "Q(i)"])
    assert result.exit_code == 0
    assert "i" in result.output


# ------------------------------------------------------------------ file args


def test_eval_at_file(runner, tmp_path):
    tup = {"field": "Q", "size": 2,
           "matrices": [[["1", "0"], ["0", "0"]],
                        [["0", "1"], ["0", "0"]]]}
    path = tmp_path / "tuple.json"
    path.write_text(json.dumps(tup))
    result = invoke(runner, ["eval", "x*y+1", "--at", str(path), "--json"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["value"] == [["1", "1"], ["0", "1"]]


def test_eval_at_malformed_json_exit_three(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    result = invoke(runner, ["eval", "x", "--at", str(path)])
    assert result.exit_code == 3


def test_pencil_sim_files(runner, tmp_path):
    a = {"field": "Q", "size": 2, "matrices": [[["0", "1"], ["0", "0"]]]}
    b = {"field": "Q", "size": 2, "matrices": [[["0", "0"], ["0", "0"]]]}
    pa = tmp_path / "a.json"
    pb = tmp_path / "b.json"
    pa.write_text(json.dumps(a))
    pb.write_text(json.dumps(b))
    result = invoke(runner, ["pencil-sim", str(pa), str(pb)])
    assert result.exit_code == 1
    result = invoke(runner, ["pencil-sim", str(pa), str(pa)])
    assert result.exit_code == 0


def test_pad_pencil_files(runner, tmp_path):
    pencil = {"field": "Q", "size": 1, "kind": "homogeneous",
              "coefficients": [[["1"]]]}
    tup = {"field": "Q", "matrices": [[["1"], ["0"]]]}
    pp = tmp_path / "pencil.json"
    pt = tmp_path / "tuple.json"
    pp.write_text(json.dumps(pencil))
    pt.write_text(json.dumps(tup))
    result = invoke(runner, ["pad-pencil", str(pp), str(pt), "--json"])
    assert result.exit_code == 0
    report = json.loads(result.output)
    assert report["claimed_rank"] == 2
    assert report["verified"] is True


# ----------------------------------------------------------------- verification


def test_verify_accepts_fresh_report(runner, tmp_path):
    result = invoke(runner, ["stable-assoc", "x*y*x*y+x*y+x",
                             "x*y^2*x+x*y+x", "--json"])
    path = tmp_path / "report.json"
    path.write_text(result.output)
    check = invoke(runner, ["verify", str(path)])
    assert check.exit_code == 0
    assert "PASS" in check.output
    assert "FAIL" not in check.output


def test_verify_rejects_tampered_report(runner, tmp_path):
    result = invoke(runner, ["stable-assoc", "x*y*x*y+x*y+x",
                             "x*y^2*x+x*y+x", "--json"])
    report = json.loads(result.output)
    report["certificate"]["right_multiplier"] = "y*x+2"
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(report))
    check = invoke(runner, ["verify", str(path)])
    assert check.exit_code == 1
    assert "FAIL" in check.output


def test_verify_malformed_report_exit_three(runner, tmp_path):
    path = tmp_path / "malformed.json"
    path.write_text(json.dumps({"command": "stable-assoc"}))
    check = invoke(runner, ["verify", str(path)])
    assert check.exit_code == 3
    path2 = tmp_path / "not-json.json"
    path2.write_text("{oops")
    check2 = invoke(runner, ["verify", str(path2)])
    assert check2.exit_code == 3


def test_verify_paper_reports_items(runner):
    result = invoke(runner, ["verify-paper"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert sum(1 for ln in lines if ln.startswith("PASS ")) == 10
    assert lines[-1].startswith("overall: PASS")
    assert "FAIL" not in result.output


def test_verify_round_trip_across_commands(runner, tmp_path):
    cases = [
        ["isospectral", "x*y+1", "y*x+1"],
        ["similar", "x*y+1", "y*x+1"],
        ["comax", "x*y+1", "x"],
        ["decompose", "x*y*x*y+2*x*y+3"],
        ["nc-witness", "x", "y"],
    ]
    for idx, args in enumerate(cases):
        result = invoke(runner, args + ["--json"])
        assert result.exit_code in (0, 1), (args, result.output)
        path = tmp_path / ("report%d.json" % idx)
        path.write_text(result.output)
        check = invoke(runner, ["verify", str(path)])
        assert check.exit_code == 0, (args, check.output)
