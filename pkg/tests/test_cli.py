"""The command-line front door: subcommands, exit codes, output modes."""

from __future__ import annotations

import json

import numpy as np
import pytest

from compoundness import jsonio
from compoundness.catalog import boolean, chain, mo
from compoundness.cli import main
from compoundness.operators import TensorVector
from compoundness.quantale import ProperStateSpace


@pytest.fixture()
def files(tmp_path):
    def write(name: str, payload) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return write


def test_lattice_check_valid(files, capsys):
    path = files("mo2.json", jsonio.dump_lattice(mo(2)))
    assert main(["lattice", "check", path]) == 0
    out = capsys.readouterr().out
    assert "valid lattice" in out and "6 elements" in out


def test_lattice_check_invalid_exits_one(files, capsys):
    payload = {"elements": ["a", "b", "c", "d"],
               "leq": [[0, 2], [0, 3], [1, 2], [1, 3]]}
    path = files("bowtie.json", payload)
    assert main(["lattice", "check", path]) == 1
    assert "violation" in capsys.readouterr().err


def test_parse_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope", encoding="utf-8")
    assert main(["lattice", "check", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_exits_two(capsys):
    assert main(["lattice", "check", "/definitely/not/here.json"]) == 2


def test_lattice_sasaki(files, capsys):
    path = files("mo2.json", jsonio.dump_lattice(mo(2)))
    assert main(["lattice", "sasaki", path, "a", "b"]) == 0
    assert capsys.readouterr().out.strip() == "a"


def test_galois_dual_and_classify(files, capsys):
    b2 = boolean(2).base
    two = chain(2)
    table = [two.bottom, two.top, two.top, two.top]
    payload = {
        "source": jsonio.dump_lattice(b2),
        "target": jsonio.dump_lattice(two),
        "table": table,
    }
    path = files("map.json", payload)
    assert main(["--json", "galois", "dual", path]) == 0
    dual = json.loads(capsys.readouterr().out)
    # weakest cause of the 2-chain bottom is the B2 bottom, of its top the B2 top
    assert dual["table"] == [b2.bottom, b2.top]

    assert main(["--json", "galois", "classify", path]) == 0
    flags = json.loads(capsys.readouterr().out)["flags"]
    assert "separation-like" in flags


def test_galois_enumerate(files, capsys):
    l1 = files("b2.json", jsonio.dump_lattice(boolean(2).base))
    l2 = files("c2.json", jsonio.dump_lattice(chain(2)))
    assert main(["--json", "galois", "enumerate", l1, l2]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 4


def test_hilbert_ops(files, capsys):
    e1 = files("e1.json", jsonio.dump_matrix(np.array([[1.0], [0.0]])))
    diag = files("diag.json", jsonio.dump_matrix(np.array([[1.0], [1.0]])))
    assert main(["--json", "hilbert", "sasaki", e1, diag]) == 0
    frame = jsonio.parse_matrix(json.loads(capsys.readouterr().out))
    assert frame.shape == (2, 1)
    assert abs(abs(frame[0, 0]) - 1.0) < 1e-12

    assert main(["--json", "hilbert", "ortho", e1]) == 0
    frame = jsonio.parse_matrix(json.loads(capsys.readouterr().out))
    assert abs(abs(frame[1, 0]) - 1.0) < 1e-12


def test_compound_quadruple_and_tensor(files, capsys):
    op = jsonio.dump_operator(
        __import__("compoundness").CompoundOperator(np.eye(2) / np.sqrt(2))
    )
    path = files("op.json", op)
    assert main(["--json", "compound", "quadruple", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    rho1 = jsonio.parse_matrix(payload["rho1"])
    assert np.allclose(rho1, np.eye(2) / 2)

    assert main(["--json", "compound", "tensor", path]) == 0
    tv = jsonio.parse_tensor_vector(json.loads(capsys.readouterr().out))
    assert np.allclose(np.abs(tv.coefficients), [1 / np.sqrt(2)] * 2)


def test_compound_probe(files, capsys):
    rng = np.random.default_rng(0)
    matrix = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    f = files("f.json", jsonio.dump_matrix(matrix))
    assert main(["--json", "compound", "probe", f, f, "--samples", "50"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["consistent"] and payload["equal_on_samples"]


def test_cascade_run_matches_born(files, capsys):
    tv = TensorVector(
        np.array([1 / np.sqrt(2), -1 / np.sqrt(2)]),
        np.eye(2, dtype=complex),
        np.eye(2, dtype=complex),
    )
    state = files("tv.json", jsonio.dump_tensor_vector(tv))
    e1 = files("e1.json", jsonio.dump_matrix(np.array([[1.0], [0.0]])))
    assert main(["--json", "cascade", "run", "--state", state,
                 "--left", e1, "--right", e1]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["joint_probability"] == pytest.approx(0.5, abs=1e-12)
    assert payload["born_probability"] == pytest.approx(0.5, abs=1e-12)


def test_quantale_check_and_epi(files, capsys):
    space = ProperStateSpace(("p", "q"), chain(2), (1, 1))
    path = files("space.json", jsonio.dump_space(space))
    assert main(["quantale", "check", path]) == 0
    assert "10 members" in capsys.readouterr().out
    assert main(["quantale", "epi", path]) == 0
    assert "0 failures" in capsys.readouterr().out


def test_verify_runs_named_suites(capsys):
    assert main(["verify", "orthomodular", "sasaki",
                 "--trials", "10", "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert "orthomodular" in out and "sasaki" in out and "ok" in out


def test_verify_trials_zero_is_a_trivial_pass(capsys):
    assert main(["verify", "galois", "--trials", "0"]) == 0


def test_verify_exits_one_on_violations(capsys):
    # float noise cannot satisfy an exact tolerance, so failures appear
    assert main(["--tol", "0", "verify", "orthomodular", "--trials", "20"]) == 1
    assert "FAILURES" in capsys.readouterr().out


def test_cascade_verify_json_reports_both_campaigns(capsys):
    assert main(["--json", "cascade", "verify", "--dim", "2",
                 "--trials", "20", "--seed", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["update_laws"]["failures"] == []
    assert payload["cascade_born"]["failures"] == []


def test_verify_unknown_suite_exits_two(capsys):
    assert main(["verify", "nope", "--trials", "1"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_verify_json_output_is_machine_readable(capsys):
    assert main(["--json", "verify", "quadruple", "--trials", "5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload[0]["suite"] == "quadruple"
    assert payload[0]["failures"] == []


def test_usage_error_exits_two(capsys):
    assert main(["lattice"]) == 2
    assert main([]) == 2


def test_convert_round_trip(files, tmp_path, capsys):
    data = jsonio.dump_matrix(np.eye(2))
    src = files("m.json", data)
    out = str(tmp_path / "out.json")
    assert main(["convert", src, out, "--from", "matrix-json",
                 "--to", "matrix-json"]) == 0
    again = json.loads(open(out, encoding="utf-8").read())
    assert again["re"] == data["re"]


def test_quiet_suppresses_text(files, capsys):
    path = files("c2.json", jsonio.dump_lattice(chain(2)))
    assert main(["--quiet", "lattice", "check", path]) == 0
    assert capsys.readouterr().out == ""
