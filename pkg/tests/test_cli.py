import json

import pytest

from src import cli


def run_json(capsys, argv):
    """Exit code and the single JSON document printed on stdout"""
    code = cli.main(argv + ["--json"])
    out = capsys.readouterr().out
    report, end = json.JSONDecoder().raw_decode(out)
    assert out[end:].strip() == ""
    assert " - INFO - " not in out
    assert " - DEBUG - " not in out
    return code, report


def test_check_passes(model_dir, capsys):
    code, report = run_json(capsys, ["check", str(model_dir / "cp2.dgl"), "--max-degree", "6"])
    assert code == 0
    assert report["command"] == "check"
    assert report["status"] == "ok"
    assert report["details"]["stages"] == {"x": 0, "y": 1}


def test_check_reports_d_squared_failure(model_dir, capsys):
    code, report = run_json(capsys, ["check", str(model_dir / "broken.dgl")])
    assert code == 1
    assert report["status"] == "failed"


def test_homology_summary(model_dir, capsys):
    code = cli.main(["homology", str(model_dir / "cp2.dgl"), "--max-degree", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "H_4: 1" in out
    assert "=" * 60 in out


def test_cat_certificate(model_dir, capsys):
    code, report = run_json(capsys, ["cat", str(model_dir / "cp2.dgl"), "--max-n", "3", "--max-degree", "4"])
    assert code == 0
    assert report["status"] == "certificate"
    assert report["details"]["bound"] == 2
    assert report["details"]["statement"] == "cat <= 2 (certificate verified up to degree 4)"
    assert report["certificate"]["x"] == "x@1 + x@2 + x@3"
    assert report["timings"] is None


def test_verbose_json_keeps_stdout_clean(model_dir, capsys):
    code, report = run_json(capsys, ["cat", str(model_dir / "s3.dgl"), "--max-n", "2", "--max-degree", "4", "-v"])
    assert code == 0
    assert report["details"]["bound"] == 1
    assert report["certificate"] == {"v": "v@1 + v@2"}


def test_secat_single_n_without_certificate(model_dir, capsys):
    code, report = run_json(capsys, ["secat", str(model_dir / "cp2.dgl"), "--n", "1", "--max-degree", "4"])
    assert code == 1
    assert report["status"] == "no_certificate"
    outcomes = report["details"]["outcomes"]
    assert [o["n"] for o in outcomes] == [1]
    assert outcomes[0]["exhaustive"] is True
    assert outcomes[0]["residual"] == "2*[x@1,x@2]"


def test_tc_of_odd_sphere(model_dir, capsys):
    code, report = run_json(capsys, ["tc", str(model_dir / "s3.dgl"), "--max-n", "2", "--max-degree", "5"])
    assert code == 0
    assert report["details"]["bound"] == 1
    assert report["details"]["replacement"]["relative"] == ["u1", "u2"]


def test_timings_are_opt_in(model_dir, capsys):
    code, report = run_json(capsys, ["homology", str(model_dir / "s2.dgl"), "--timings"])
    assert code == 0
    assert "homology" in report["timings"]


def test_power_writes_model_file(model_dir, tmp_path, capsys):
    out = tmp_path / "cp2sq.dgl"
    code = cli.main(["power", str(model_dir / "cp2.dgl"), "--copies", "2", "--max-degree", "6",
                     "--check", "-o", str(out)])
    assert code == 0
    text = out.read_text(encoding="utf-8")
    assert "generator s{x@1,x@2} 3" in text
    assert "d s{x@1,x@2} = [x@1,x@2]" in text


def test_input_errors_exit_two(model_dir, capsys):
    assert cli.main(["cat", str(model_dir / "cone.dgl")]) == cli.EXIT_INPUT_ERROR
    assert cli.main(["check", str(model_dir / "missing.dgl")]) == cli.EXIT_INPUT_ERROR
    assert cli.main(["check", str(model_dir / "s2.dgl"), "--max-degree", "99"]) == cli.EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


def test_invariant_violation_exits_three(model_dir, capsys):
    assert cli.main(["homology", str(model_dir / "broken.dgl")]) == cli.EXIT_INVARIANT_VIOLATION
    assert "invariant violation" in capsys.readouterr().err


def test_unknown_command_is_rejected_by_argparse():
    with pytest.raises(SystemExit):
        cli.main(["frobnicate"])
