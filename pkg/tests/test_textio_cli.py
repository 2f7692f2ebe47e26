import subprocess
import sys

import numpy as np
import pytest

from clifford_ergotropy.cli import main
from clifford_ergotropy.models import hamiltonian_2q, tt_state
from clifford_ergotropy.textio import (
    ParseError,
    format_hamiltonian,
    format_state,
    parse_hamiltonian,
    parse_state,
    write_hamiltonian,
    write_state,
)


def kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def test_hamiltonian_roundtrip():
    h = hamiltonian_2q(0.3, -0.5)
    assert parse_hamiltonian(format_hamiltonian(h)) == h


def test_hamiltonian_comments_and_merging():
    text = "# header\n0.5 XZ   # trailing\n\n0.25 XZ\n-1 -YY\n"
    h = parse_hamiltonian(text)
    assert h.coefficient("XZ") == 0.75 and h.coefficient("YY") == 1.0


def test_identity_term_dropped_with_warning():
    with pytest.warns(UserWarning, match="line 2"):
        h = parse_hamiltonian("1 XX\n3 II\n")
    assert len(h) == 1


@pytest.mark.parametrize("text, line", [
    ("0.5 XZ\nabc YY\n", 2),
    ("0.5 XZ\n1 XYZ\n", 2),
    ("0.5 XQ\n", 1),
    ("0.5\n", 1),
    ("nan XX\n", 1),
])
def test_hamiltonian_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        parse_hamiltonian(text)
    assert err.value.lineno == line


def test_state_roundtrip_and_renormalization():
    psi = tt_state()
    back = parse_state(format_state(psi))
    np.testing.assert_allclose(back.amplitudes, psi.amplitudes, atol=1e-15)
    near = parse_state("0.7071068\n0 0.7071068\n")
    assert abs(np.linalg.norm(near.amplitudes) - 1) < 1e-15


@pytest.mark.parametrize("text", ["1 0\n0 0\n0 0\n", "2 0\n0 0\n", "1 0 0\n0 0\n", "x 0\n0 0\n", ""])
def test_state_errors(text):
    with pytest.raises(ParseError):
        parse_state(text)


@pytest.fixture
def tt_files(tmp_path):
    sp, hp = tmp_path / "state.txt", tmp_path / "ham.txt"
    write_state(tt_state(), sp)
    write_hamiltonian(hamiltonian_2q(0.3, 0.5), hp)
    return sp, hp


def test_cli_bounds_exact(tt_files, capsys):
    assert main(["bounds", str(tt_files[0]), str(tt_files[1])]) == 0
    out = kv(capsys.readouterr().out)
    assert out["clifford_mode"] == "exact"
    assert abs(float(out["clifford_ergotropy"]) - 2.09705627484771) < 1e-12
    assert abs(float(out["bound_rearrangement"]) - 2.20060966544099) < 1e-12
    assert abs(float(out["bound_holder"]) - 2.26274169979695) < 1e-12


def test_cli_bounds_maximize(tt_files, capsys):
    assert main(["bounds", "--maximize", str(tt_files[0]), str(tt_files[1])]) == 0
    out = kv(capsys.readouterr().out)
    assert out["objective"] == "maximize"
    assert float(out["clifford_ergotropy"]) >= 0


def test_cli_bounds_heuristic(tmp_path, capsys):
    from clifford_ergotropy.models import hamiltonian_tfim, t_product_state

    sp, hp = tmp_path / "s.txt", tmp_path / "h.txt"
    write_state(t_product_state(4), sp)
    write_hamiltonian(hamiltonian_tfim(4, 0.5), hp)
    assert main(["bounds", str(sp), str(hp), "--heuristic-restarts", "5"]) == 0
    out = kv(capsys.readouterr().out)
    assert out["clifford_mode"] == "heuristic"
    assert float(out["clifford_ergotropy"]) <= float(out["clifford_ergotropy_upper"]) + 1e-12


def test_cli_bounds_input_errors(tt_files, tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0.5 XZ\n1 XQ\n")
    assert main(["bounds", str(tt_files[0]), str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["bounds", str(tt_files[0]), str(tmp_path / "missing.txt")]) == 2
    three = tmp_path / "h3.txt"
    three.write_text("1 XYZ\n")
    assert main(["bounds", str(tt_files[0]), str(three)]) == 2


def test_cli_sweep_and_unwritable_path(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    assert main(["sweep2q", "--h", "0.5", "--steps", "5", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("g,initial_energy,ergotropy,clifford_ergotropy_exact")
    assert len(lines) == 6
    assert main(["sweep2q", "--out", str(tmp_path / "no" / "dir.csv")]) == 2


def test_cli_typicality(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["typicality", "--n", "4", "--samples", "20", "--seed", "1", "--out", str(out)]) == 0
    summary = kv(capsys.readouterr().out)
    assert summary["samples"] == "20" and float(summary["violation_fraction"]) == 0
    assert main(["typicality", "--n", "11", "--out", str(out)]) == 2
    assert main(["typicality", "--n", "4", "--a", "1", "--out", str(out)]) == 2


def test_cli_ising_and_single_qubit(capsys):
    assert main(["ising-bound", "--model", "classical", "--field", "0.5", "--n", "6"]) == 0
    out = kv(capsys.readouterr().out)
    assert abs(float(out["gap_lower_bound"]) - 6 * (1 - 2 ** -0.5) * 1.5) < 1e-12
    assert main(["ising-bound", "--model", "tfim", "--field", "0.5", "--n", "4"]) == 0
    out = kv(capsys.readouterr().out)
    assert abs(float(out["crossing_lower"]) - 0.506) < 0.002
    assert main(["single-qubit", "--bloch", "0.7071067811865476", "0.7071067811865476", "0"]) == 0
    out = kv(capsys.readouterr().out)
    assert abs(float(out["gap"]) - (1 - 2 ** -0.5)) < 1e-12
    assert main(["single-qubit", "--bloch", "1", "1", "0"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clifford_ergotropy", "single-qubit",
                           "--bloch", "0", "0", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "clifford_ergotropy=2" in proc.stdout
