"""The qspec command line driver: reports, exit codes, determinism."""

import json

from qspec.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_quantale_text(capsys):
    code, out, _ = run_cli(capsys, "check-quantale", "--quantale", "godel3")
    assert code == 0
    assert "[PASS] axioms" in out
    assert "result: ok" in out


def test_check_quantale_json_includes_zdf_witness(capsys):
    code, out, _ = run_cli(capsys, "check-quantale", "--quantale", "lukasiewicz3",
                           "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["zdf"] is False
    assert report["zdf_witness"] == ["1/2", "1/2"]
    assert report["passed"] is True


def test_check_quantale_from_file(tmp_path, capsys):
    doc = {
        "name": "b2", "elements": ["0", "1"],
        "join": [["0", "1"], ["1", "1"]],
        "mul": [["0", "0"], ["0", "1"]],
        "unit": "1",
    }
    path = tmp_path / "b2.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "check-quantale", "--file", str(path),
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["document"] == doc


def test_broken_quantale_fails_with_exit_one(tmp_path, capsys):
    doc = {
        "name": "broken", "elements": ["0", "1"],
        "join": [["0", "1"], ["1", "0"]],  # not commutative-idempotent at (1,1)
        "mul": [["0", "0"], ["0", "1"]],
        "unit": "1",
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "check-quantale", "--file", str(path))
    assert code == 1
    assert "[FAIL] axioms" in out


def test_invalid_config_exits_two(capsys):
    code, _, err = run_cli(capsys, "check-quantale", "--quantale", "nonsense7")
    assert code == 2
    assert "error" in err


def test_algebras_json_and_dot(capsys):
    code, out, _ = run_cli(capsys, "algebras", "--quantale", "boolean2",
                           "--size", "2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert len(report["poset"]["algebras"]) == 7
    assert report["poset"]["complete"] is True
    code, out, _ = run_cli(capsys, "algebras", "--quantale", "boolean2",
                           "--size", "2", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph algebras")


def test_spectrum_selector(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--quantale", "godel3",
                           "--size", "2", "--algebra", "diagonal",
                           "--format", "json")
    assert code == 0
    report = json.loads(out)
    (entry,) = report["spectra"].values()
    assert len(entry["characters"]) == 6
    assert len(entry["prime_ideals"]) == 4
    assert sorted(entry["kernel_map"]) == [0, 0, 1, 2, 2, 3]


def test_sections_command(capsys):
    code, out, _ = run_cli(capsys, "sections", "--quantale", "boolean2",
                           "--size", "2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert len(report["gelfand_sections"]) == 2
    assert len(report["prime_sections"]) == 2


def test_verdict_exit_status_and_content(capsys):
    code, out, _ = run_cli(capsys, "verdict", "--quantale", "boolean2",
                           "--size", "2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"]["contextual"] is False
    assert report["passed"] is True


def test_topology_example_shape(capsys):
    code, out, _ = run_cli(capsys, "topology", "--quantale", "godel3",
                           "--size", "2", "--algebra", "diagonal",
                           "--format", "json")
    assert code == 0
    report = json.loads(out)
    (entry,) = report["topologies"].values()
    assert entry["prime"]["t0"] is True
    assert entry["prime"]["t1"] is False
    assert entry["gelfand"]["t0"] is False
    assert len(entry["gelfand"]["indistinguishable_pairs"]) == 2
    assert entry["gelfand"]["quotient_points"] == 4


def test_verdict_json_is_byte_identical_across_runs(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert main(["verdict", "--quantale", "godel3", "--size", "2",
                     "--seed", "7", "--format", "json", "--out", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_entry_point_runs_in_a_subprocess(tmp_path):
    import subprocess
    import sys
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "qspec.cli", "sections", "--quantale", "boolean2",
         "--size", "2", "--format", "json", "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["passed"] is True


def test_generated_mode_flag(capsys):
    code, out, _ = run_cli(capsys, "algebras", "--quantale", "godel3",
                           "--size", "2", "--mode", "generated",
                           "--max-generators", "2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["poset"]["complete"] is False
    assert report["poset"]["mode"] == "generated"


def test_unknown_algebra_selector(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--quantale", "boolean2",
                           "--size", "2", "--algebra", "zorp")
    assert code == 2
    assert "selector" in err
