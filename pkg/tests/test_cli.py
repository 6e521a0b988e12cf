"""Command-line interface: parsing, reports, determinism, exit codes."""

import json

import pytest

from equik import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cohomology_command(capsys):
    code, out, _ = run(capsys, "cohomology", "--group", "cyclic:4",
                       "--action", "inversion")
    assert code == 0
    report = json.loads(out)
    assert report["invariant_factors"] == [2, 4]
    assert report["command"] == "cohomology"
    assert "version" in report and "config" in report


def test_cohomology_single_group_shape(capsys):
    code, out, _ = run(capsys, "cohomology", "--group", "cyclic:3",
                       "--shape", "single")
    assert code == 0
    assert json.loads(out)["invariant_factors"] == [3]


def test_ms_command(capsys):
    code, out, _ = run(capsys, "ms", "--group", "cyclic:5",
                       "--action", "inversion")
    assert code == 0
    report = json.loads(out)
    assert report["multiplicative_structures"] == []
    code, out, _ = run(capsys, "ms", "--group", "cyclic:4")
    assert json.loads(out)["multiplicative_structures"] == [4]


def test_dpr_command(capsys):
    code, out, _ = run(capsys, "dpr", "--group", "cyclic:4", "--coords", "1")
    assert code == 0
    report = json.loads(out)
    assert report["bar_h3"] == [4]
    assert report["multiplicative_class"] == [2]
    assert set(report["cocycle"]) == {"alpha_2_1", "beta_1_2", "theta_0_3"}


def test_fusion_command_deterministic(tmp_path, capsys):
    args = ["fusion", "--group", "cyclic:3", "--twist", "dpr:1"]
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(args + ["--out", str(p1)]) == 0
    assert cli.main(args + ["--out", str(p2)]) == 0
    capsys.readouterr()
    assert p1.read_bytes() == p2.read_bytes()
    report = json.loads(p1.read_text())
    assert report["rank"] == 9
    assert all(len(t) == 4 for t in report["structure_constants"])


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--group", "cyclic:3")
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["checks"]["coquasi_axioms"] is True


def test_text_format(capsys):
    code, out, _ = run(capsys, "cohomology", "--group", "cyclic:3",
                       "--action", "inversion", "--format", "text")
    assert code == 0
    assert "invariant_factors" in out and "{" not in out


def test_usage_errors(capsys):
    code, out, err = run(capsys, "cohomology", "--group", "nonsense:7")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "UsageError"
    code, _, err = run(capsys, "dpr", "--group", "cyclic:4",
                       "--action", "inversion")
    assert code == 2
    code, _, err = run(capsys, "cohomology", "--group", "cyclic:4",
                       "--action", "trivial:banana")
    assert code == 2


def test_resource_error(capsys):
    code, _, err = run(capsys, "cohomology", "--group",
                       "product:symmetric:4,cyclic:3")
    assert code == 3
    assert json.loads(err)["error"]["type"] == "ResourceLimitError"


def test_builder_json_file(tmp_path, capsys):
    gpath = tmp_path / "g.json"
    gpath.write_text(json.dumps({"kind": "cyclic", "n": 4}))
    apath = tmp_path / "a.json"
    apath.write_text(json.dumps({"kind": "inversion"}))
    code, out, _ = run(capsys, "cohomology", "--group", str(gpath),
                       "--action", str(apath))
    assert code == 0
    assert json.loads(out)["invariant_factors"] == [2, 4]


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus-command"])
    assert exc.value.code == 2
