import csv

import pytest

from qfa.cli import builtin_circuit, main
from qfa.simulator import assert_equiv
from qfa.qasm import parse


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_signed_mul_example(tmp_path, capsys):
    f = tmp_path / "m.qasm"
    assert main(["synth", "--op", "mul", "--fmt-x", "s3e0", "--fmt-y", "s3e0", "--fmt-out", "s3e0", "--out", str(f)]) == 0
    code, out, _ = _run(capsys, "simulate", "--qasm", str(f), "--input", "x=-3,y=2")
    assert (code, out) == (0, "-6")


def test_unsigned_ancilla_synth(tmp_path, capsys):
    f = tmp_path / "f.qasm"
    argv = ["synth", "--op", "mul", "--fmt-x", "u4e0", "--fmt-y", "u4e0", "--fmt-out", "u8e0"]
    assert main(argv + ["--strategy", "ancilla", "--ancillas", "4", "--out", str(f)]) == 0
    code, out, _ = _run(capsys, "simulate", "--qasm", str(f), "--input", "x=7,y=3")
    assert out == "21"


def test_float_decoded_output(tmp_path, capsys):
    f = tmp_path / "a.qasm"
    main(["synth", "--op", "add", "--fmt-x", "u2e-1", "--fmt-y", "u2e-2", "--out", str(f)])
    _, out, _ = _run(capsys, "simulate", "--qasm", str(f), "--input", "x=1.5,y=0.25")
    assert out == "1.75"


def test_poly_synth(tmp_path, capsys):
    f = tmp_path / "p.qasm"
    main(["synth", "--poly", "x**2 + y", "--fmt-x", "u2e0", "--fmt-y", "u2e0", "--fmt-out", "u4e0", "--out", str(f)])
    _, out, _ = _run(capsys, "simulate", "--qasm", str(f), "--input", "x=3,y=2")
    assert out == "11"


def test_empty_circuit(tmp_path, capsys):
    f = tmp_path / "e.qasm"
    f.write_text('OPENQASM 2.0;\ninclude "qelib1.inc";\n')
    assert _run(capsys, "simulate", "--qasm", str(f), "--input", "0")[:2] == (0, "0")


def test_bench_rows(tmp_path, capsys):
    f = tmp_path / "b.csv"
    assert main(["bench", "--suite", "fig6", "--sizes", "4", "--csv", str(f)]) == 0
    rows = list(csv.reader(f.open()))
    assert rows[0] == [
        "method", "op", "n1", "n2", "m", "ancillas", "depth", "cx_count",
        "rz_count", "sx_count", "gms_uniform", "gms_nonuniform", "build_millis",
    ]
    assert len(rows) == 9
    assert {r[0] for r in rows[1:]} == {"sbp-naive", "sbp-ancilla-1", "sbp-ancilla-n", "ripple"}
    assert all(int(r[6]) >= 1 for r in rows[1:])


def test_exit_codes(capsys):
    assert main(["bench", "--bogus"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["synth", "--fmt-x", "q3", "--fmt-y", "u2e0"]) == 3
    assert "bad format" in capsys.readouterr().err
    assert main(["synth", "--op", "add", "--fmt-x", "u2e0", "--fmt-y", "u2e1", "--fmt-out", "u3e1"]) == 3
    assert main(["export-qasm", "nope"]) == 3


@pytest.mark.parametrize("name", ["qft-4", "qft-swapless-3", "sbp-example", "cuccaro-2", "ripple-2x2", "mulconst-3-3"])
def test_export_builtins(name, capsys):
    assert main(["export-qasm", name]) == 0
    text = capsys.readouterr().out
    c = builtin_circuit(name)
    if c.qubit_count <= 10:
        ok, dev = assert_equiv(c, parse(text), up_to_global_phase=False)
        assert ok, dev
