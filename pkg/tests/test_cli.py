import json
import subprocess
import sys

import numpy as np
import pytest

from nodal_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--degree", "3")
    assert code == 0
    data = json.loads(out)
    assert data["manifest"]["subcommand"] == "roots"
    assert np.allclose(sorted(data["result"]["roots"]), [-np.sqrt(0.6), 0.0, np.sqrt(0.6)])


def test_mean_closed_example(capsys):
    code, out, _ = run(capsys, "mean", "--closed", "2", "2", "2", "2")
    assert code == 0
    assert json.loads(out)["result"]["closed_form"] == pytest.approx(6.0, abs=1e-12)


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "length", "--degree", "3")
    assert code == 2 and "--seed" in err


def test_computation_error_exits_1(tmp_path, capsys):
    # one pole of multiplicity 2: the poles do not determine a degree-1 harmonic
    form = _write(tmp_path, {"roots": [[1.0, 0.0, 0.0, 0.0]], "multiplicities": [2]})
    code, out, _ = run(capsys, "reconstruct", "--input", str(form), "--seed", "0", "--degree", "1")
    assert code == 1
    assert json.loads(out)["error"]["type"] == "CoincidentPolesError"


def _write(tmp_path, obj, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return path


def test_construct_poles_reconstruct_chain(tmp_path, capsys):
    src = _write(tmp_path, {"degree": 2, "points": [[0, 0, 1], [0.6, 0.8, 0], [1, 0, 0], [0, 0.6, 0.8]],
                            "y": [0.48, 0.6, 0.64]})
    code, out, _ = run(capsys, "construct", "--input", str(src))
    assert code == 0
    built = _write(tmp_path, json.loads(out), "u.json")
    code, out, _ = run(capsys, "poles", "--input", str(built), "--seed", "1")
    assert code == 0
    pl = _write(tmp_path, json.loads(out), "poles.json")
    code, out, _ = run(capsys, "reconstruct", "--input", str(pl), "--seed", "2")
    assert code == 0
    u = np.array(json.loads(built.read_text())["result"]["harmonic"]["coeffs"])
    res = json.loads(out)["result"]
    h = res["harmonic"]
    q = np.array(h["real"]["coeffs"]) + 1j * np.array(h["imag"]["coeffs"])
    cos = abs(np.vdot(q, u)) / (np.linalg.norm(q) * np.linalg.norm(u))
    assert cos > 1 - 1e-8


@pytest.mark.parametrize(
    "argv",
    [
        ("length", "--degree", "3", "--seed", "5", "--circles", "500"),
        ("critical", "--degree", "2", "--seed", "5", "--mesh-level", "5"),
        ("common-zeros", "--degree", "2", "--seed", "5", "--mesh-level", "5"),
        ("mean", "--mc", "zeros", "--degree", "1", "--samples", "10", "--seed", "5", "--mesh-level", "4"),
    ],
)
def test_reruns_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first[1] == second[1]


def test_trace_csv(tmp_path, capsys):
    u = _write(tmp_path, {"degree": 1, "basis": "real-orthonormal-prob-v1", "coeffs": [0, 1, 0]})
    out = tmp_path / "c.csv"
    code, _, _ = run(capsys, "trace", "--input", str(u), "--mesh-level", "4", "--format", "csv", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "component,vertex,x,y,z"
    assert all(abs(float(line.split(",")[4])) < 1e-12 for line in lines[1:])


def test_verify_kernel(capsys):
    code, out, _ = run(capsys, "verify", "kernel")
    assert code == 0
    assert all(c["passed"] for c in json.loads(out)["result"]["suites"]["kernel"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nodal_lab", "mean", "--closed", "2", "1", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["closed_form"] == pytest.approx(2 * np.pi * np.sqrt(6))
