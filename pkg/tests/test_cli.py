import json
import subprocess
import sys

import numpy as np
import pytest

from qgloves import __version__, linalg
from qgloves.cli import main
from qgloves.errors import BadState
from qgloves.experiments import (
    FrameSpec,
    cmd_chi_protocol,
    cmd_encoded,
    cmd_gloves,
    cmd_tomography,
    read_state_file,
    write_state_file,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def checks_by_name(report):
    return {c["name"]: c for c in report["checks"]}


def test_report_fields(capsys):
    code, out, _ = run_cli(capsys, "tomography")
    report = json.loads(out)
    assert code == 0
    assert set(report) == {"experiment", "parameters", "results", "checks", "version"}
    assert report["version"] == __version__
    assert report["parameters"]["seed"] == 7
    for c in report["checks"]:
        assert set(c) >= {"name", "expected", "actual", "tolerance", "pass"}


def test_tomography_singlet_matched(capsys):
    _, out, _ = run_cli(capsys, "tomography", "--state", "singlet", "--shots", "exact")
    report = json.loads(out)
    checks = checks_by_name(report)
    assert checks["frobenius_to_singlet"]["actual"] <= 1e-10
    assert report["results"]["min_eigenvalue"] == pytest.approx(0, abs=1e-10)
    assert report["results"]["peres_verdict"] == "Entangled"


def test_tomography_singlet_mirrored_bob(capsys):
    code, out, _ = run_cli(capsys, "tomography", "--bob-mirror")
    report = json.loads(out)
    assert code == 0
    assert report["results"]["min_eigenvalue"] == pytest.approx(-0.5, abs=1e-9)
    assert checks_by_name(report)["reconstruction_equals_mirrored_form"]["pass"]


def test_tomography_sampled(capsys):
    code, out, _ = run_cli(capsys, "tomography", "--shots", "100000", "--seed", "7")
    report = json.loads(out)
    assert code == 0
    assert report["results"]["max_sampling_error"] <= 0.02
    c = report["results"]["correlations"]
    assert c["shots"] == 100000
    assert np.allclose(c["t"], -np.eye(3), atol=0.02)


def test_tomography_rotated_frames_match_frame_model():
    for alice, bob in [
        (FrameSpec((0.0, 1.0, 0.0), 0.9), FrameSpec((1.0, 0.0, 0.0), -0.4, True)),
        (FrameSpec((0.0, 0.0, 1.0), 1.1, True), FrameSpec((0.0, 0.0, 1.0), 2.0, True)),
    ]:
        report = cmd_tomography("werner:0.7", alice, bob)
        assert report.passed, [c for c in report.checks if not c.passed]


def test_mirror_with_rotation_still_mirrored(capsys):
    code, out, _ = run_cli(capsys, "tomography", "--bob-mirror", "--bob-axis", "1,1,0",
                           "--bob-angle", "0.5")
    assert code == 0
    assert json.loads(out)["results"]["min_eigenvalue"] == pytest.approx(-0.5, abs=1e-9)


@pytest.mark.parametrize("p, verdict", [(0.2, "Separable"), (0.8, "Entangled")])
def test_tomography_werner(capsys, p, verdict):
    code, out, _ = run_cli(capsys, "tomography", "--state", f"werner:{p}")
    report = json.loads(out)
    assert code == 0
    assert report["results"]["peres_verdict"] == verdict
    assert checks_by_name(report)["werner_peres_verdict"]["pass"]


def test_state_file_round_trip(tmp_path, capsys):
    rho = linalg.werner(0.6)
    rho = rho + 0.01j * (np.eye(4)[0:1].T @ np.eye(4)[1:2] - np.eye(4)[1:2].T @ np.eye(4)[0:1])
    path = tmp_path / "state.txt"
    write_state_file(path, rho)
    assert path.read_text().splitlines()[0] == "4"
    assert linalg.max_abs_diff(read_state_file(path), rho) == 0
    code, out, _ = run_cli(capsys, "tomography", "--state", str(path))
    assert code == 0
    assert json.loads(out)["parameters"]["state"] == {"kind": "file", "path": str(path)}


@pytest.mark.parametrize(
    "content",
    ["", "4\n1 0 0 0\n", "x\n" + "0 0 " * 16, "4\n" + "1 0 " * 16, "2 3\n" + "0 0 " * 6],
)
def test_bad_state_files(tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    with pytest.raises(BadState):
        read_state_file(path)


def test_bad_state_file_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("4\n" + "1 0 " * 16)
    code, _, err = run_cli(capsys, "tomography", "--state", str(path))
    assert code == 2
    assert "error" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["tomography", "--shots", "many"],
        ["tomography", "--bob-axis", "1,2"],
        ["tomography", "--seed", "-1"],
        ["tomography", "--state", "werner:1.5"],
        ["chi-protocol", "--label", "left"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_check_failure_exit_1(capsys):
    code, out, _ = run_cli(capsys, "tomography", "--shots", "50", "--tolerance", "1e-6",
                           "--state", "werner:0.4")
    assert code == 1
    assert not checks_by_name(json.loads(out))["sampled_correlations_near_exact"]["pass"]


def test_table_output(capsys):
    code, out, _ = run_cli(capsys, "tomography", "--output", "table")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "quantity,alice_axis,bob_axis,value"
    assert len(lines) == 16
    assert lines[7].startswith("t,x,x,")
    assert float(lines[7].split(",")[-1]) == pytest.approx(-1)

    code, out, _ = run_cli(capsys, "gloves", "--output", "table")
    assert out.startswith("check,expected,actual,tolerance,pass")


def test_determinism(capsys):
    argv = ["tomography", "--shots", "2000", "--seed", "99", "--state", "werner:0.5"]
    _, one, _ = run_cli(capsys, *argv)
    _, two, _ = run_cli(capsys, *argv)
    assert json.loads(one)["results"] == json.loads(two)["results"]
    _, three, _ = run_cli(capsys, *argv[:-3], "100", "--state", "werner:0.5")
    assert json.loads(one)["results"] != json.loads(three)["results"]


@pytest.mark.parametrize(
    "label, bob, key",
    [
        ("plus", FrameSpec(), "p_plus"),
        ("plus", FrameSpec(mirror=True), "p_minus"),
        ("plus", FrameSpec((0.0, 0.0, 1.0), 0.7, True), "p_minus"),
        ("minus", FrameSpec(mirror=True), "p_plus"),
    ],
)
def test_chi_protocol(label, bob, key):
    report = cmd_chi_protocol(label, bob)
    assert report.passed
    assert report.results["distribution"][key] == pytest.approx(1, abs=1e-10)


def test_chi_protocol_cli(capsys):
    code, out, _ = run_cli(capsys, "chi-protocol", "--bob-mirror", "--shots", "300")
    report = json.loads(out)
    assert code == 0
    assert report["results"]["counts"]["minus"] == 300
    assert report["results"]["chirality_verdict"] == "opposite"


@pytest.mark.parametrize(
    "handedness, mirrored, verdict",
    [("plus", False, "plus"), ("plus", True, "minus"), ("minus", True, "plus")],
)
def test_gloves(handedness, mirrored, verdict):
    report = cmd_gloves(handedness, mirrored)
    assert report.passed
    assert report.results["verdict"] == verdict
    assert report.results["overlaps"][verdict] == pytest.approx(1, abs=1e-10)


def test_gloves_cli(capsys):
    code, out, _ = run_cli(capsys, "gloves", "--handedness", "minus", "--receiver-mirrored")
    assert code == 0
    assert json.loads(out)["results"]["verdict"] == "plus"


def test_encoded():
    report = cmd_encoded(seed=3)
    assert report.passed, [c for c in report.checks if not c.passed]
    assert report.results["parity_on_AAA"] == pytest.approx(-1)


def test_suite_cli(capsys):
    code, out, _ = run_cli(capsys, "suite")
    report = json.loads(out)
    assert code == 0
    checks = checks_by_name(report)
    assert checks["chi_multiplicities"]["expected"] == [2, 4, 2]
    assert checks["chi_multiplicities"]["pass"]
    assert checks["parity_maps_plus_to_minus"]["expected"] == 1.0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qgloves", "gloves"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["experiment"] == "gloves"
