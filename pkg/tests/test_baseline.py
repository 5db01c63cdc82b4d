import pytest
from hypothesis import given, settings, strategies as st

from qfa.arith import ArithSpec, build_arith
from qfa.baseline import RippleConfig, classical_add, classical_mul, classical_sub, cuccaro_adder, ripple_multiplier
from qfa.circuit import lowered_metrics
from qfa.errors import RangeError, RegisterError
from qfa.simulator import basis_outputs, input_index, read_register, simulate_permutation


def test_classical_examples():
    assert classical_add("1010", "0111") == "10001"
    assert classical_add("1011", "0000") == "01011"
    assert classical_add("1111", "0001") == "10000"
    assert int(classical_mul("1100", "100"), 2) == 48
    assert int(classical_mul("1011", "000"), 2) == 0
    with pytest.raises(ValueError):
        classical_add("10", "1")


def test_classical_mul_exhaustive():
    for n1 in range(1, 6):
        for n2 in range(1, 6):
            for a in range(1 << n1):
                for b in range(1 << n2):
                    r = classical_mul(format(a, f"0{n1}b"), format(b, f"0{n2}b"))
                    assert int(r, 2) == a * b


@given(st.integers(0, 255), st.integers(0, 255))
def test_classical_sub_wraps(a, b):
    assert int(classical_sub(format(a, "08b"), format(b, "08b")), 2) == (a - b) % 256


def _perm(c, **values):
    return simulate_permutation(c, input_index(c, values))


def test_cuccaro_exhaustive_n3():
    c = cuccaro_adder(3)
    for a in range(8):
        for b in range(8):
            o = _perm(c, x=a, y=b)
            assert read_register(c, o, "y") + 8 * read_register(c, o, "z") == a + b
            assert read_register(c, o, "x") == a and read_register(c, o, "c") == 0


def test_cuccaro_modes():
    c = cuccaro_adder(2, "controlled")
    assert read_register(c, _perm(c, x=1, y=1, ctl=1), "y") == 2
    assert read_register(c, _perm(c, x=1, y=1, ctl=0), "y") == 0
    c = cuccaro_adder(3, "subtract")
    assert all(read_register(c, _perm(c, x=a, y=b), "y") == (b - a) % 8 for a in range(8) for b in range(8))
    with pytest.raises(RegisterError):
        cuccaro_adder(0)


def test_cuccaro_agrees_with_encoder_adder():
    r = cuccaro_adder(3)
    e = build_arith(ArithSpec("add", (3, 3), 4))
    for a in range(8):
        for b in range(8):
            o = _perm(r, x=a, y=b)
            ripple = read_register(r, o, "y") + 8 * read_register(r, o, "z")
            eo = basis_outputs(e, [input_index(e, {"x": a, "y": b})])[0][0]
            assert ripple == read_register(e, eo, "out")


def test_ripple_multiplier_exhaustive_and_cross_oracle():
    r = ripple_multiplier(3, 3)
    e = build_arith(ArithSpec("mul", (3, 3), 6))
    for a in range(8):
        for b in range(8):
            o = _perm(r, x=a, y=b)
            assert read_register(r, o, "out") == a * b
            # discarded shift bit, padding and carry ancilla all come back clean
            assert read_register(r, o, "s0") == read_register(r, o, "pad") == read_register(r, o, "c") == 0
            eo = basis_outputs(e, [input_index(e, {"x": a, "y": b})])[0][0]
            assert read_register(e, eo, "out") == a * b


def test_ripple_examples():
    r = ripple_multiplier(4, 3)
    assert read_register(r, _perm(r, x=12, y=4), "out") == 48
    assert all(read_register(r, _perm(r, x=a, y=0), "out") == 0 for a in range(16))
    with pytest.raises(RangeError):
        ripple_multiplier(3, 3, target_qubits=5)


def test_ripple_config():
    RippleConfig()
    with pytest.raises(ValueError):
        RippleConfig(variant="thapliyal")


@settings(max_examples=20)
@given(st.integers(1, 5), st.integers(1, 4), st.data())
def test_ripple_random_sizes(n1, n2, data):
    r = ripple_multiplier(n1, n2)
    a = data.draw(st.integers(0, (1 << n1) - 1))
    b = data.draw(st.integers(0, (1 << n2) - 1))
    assert read_register(r, _perm(r, x=a, y=b), "out") == a * b


def test_cuccaro_cx_linear():
    counts = [lowered_metrics(cuccaro_adder(n), with_depth=False).counts["CX"] for n in (4, 8, 16)]
    assert counts[2] - counts[1] == 2 * (counts[1] - counts[0])
