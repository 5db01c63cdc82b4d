import pytest
from hypothesis import given, strategies as st

from qfa.dyadic import Dyadic
from qfa.errors import FormatError, RangeError, ShapeError
from qfa.numfmt import (
    QFormat,
    Residue,
    decode_signed,
    decode_value,
    dyadic_to_decimal,
    encode_signed,
    encode_value,
    omega_ie,
    omega_unsigned,
    operand_polynomial,
    validate_target_exponent,
)
from qfa.sbpoly import assignment


def test_signed_examples():
    assert encode_signed(-3, 3).value == 13
    assert decode_signed(10, 3) == -6
    with pytest.raises(RangeError):
        encode_signed(8, 3)


def test_format_text():
    f = QFormat.parse("s3e-2")
    assert (f.n, f.signed, f.k, f.qubit_count) == (3, True, -2, 4)
    assert str(f) == "s3e-2"
    with pytest.raises(FormatError):
        QFormat.parse("f3")


def test_float_encoding():
    f = QFormat(3, True, -1)
    assert encode_value(Dyadic(-5, -1), f).value == 11
    assert decode_value(11, f) == Dyadic(-5, -1)
    with pytest.raises(RangeError):
        encode_value(Dyadic(1, -2), f)
    with pytest.raises(FormatError):
        decode_value(Residue(3, 3), f)


def test_exponent_rules():
    validate_target_exponent("add", 0, 1, 0)
    validate_target_exponent("mul", -1, -1, -2)
    with pytest.raises(ShapeError):
        validate_target_exponent("add", 0, 1, 1)
    with pytest.raises(ShapeError):
        validate_target_exponent("mul", -1, -1, -1)


def test_image_extension_needs_wider_target():
    with pytest.raises(FormatError):
        omega_ie("x", 3, 2)


def test_decimal_text():
    assert dyadic_to_decimal(Dyadic(-5, -3)) == "-0.625"
    assert dyadic_to_decimal(Dyadic(10)) == "10"


@given(st.integers(1, 6), st.data())
def test_signed_roundtrip(n, data):
    x = data.draw(st.integers(-(1 << n), (1 << n) - 1))
    assert decode_signed(encode_signed(x, n), n) == x


@given(st.integers(1, 4), st.integers(0, 4), st.integers(-3, 3), st.data())
def test_image_extension_value(n, extra, k, data):
    m = n + extra
    x = data.draw(st.integers(-(1 << n), (1 << n) - 1))
    bits = assignment({"x": encode_signed(x, n).value}, {"x": n + 1})
    val = omega_ie("x", n, m, k).evaluate(bits)
    assert val == Dyadic(x % (1 << (m + 1)), k)


@given(st.integers(1, 4), st.booleans(), st.integers(1, 8), st.data())
def test_operand_polynomial_mod_target(n, signed, t, data):
    fmt = QFormat(n, signed)
    lo, hi = fmt.mantissa_range
    x = data.draw(st.integers(lo, hi))
    bits = assignment({"x": encode_value(x, fmt).value}, {"x": fmt.qubit_count})
    v = int(operand_polynomial("x", fmt, t).evaluate(bits))
    assert (v - x) % (1 << t) == 0


def test_unsigned_expansion():
    assert str(omega_unsigned("x", 3)) == "x[0] + 2*x[1] + 4*x[2]"
