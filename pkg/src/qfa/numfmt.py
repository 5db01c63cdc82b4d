"""Register number formats and classical encode/decode.

Signed values use the wrap-around encoding ``[x]_n = x mod 2**(n+1)`` on ``n+1``
qubits; floating-point values keep an integer mantissa in the register and a
classical exponent ``k`` so that ``x = mantissa * 2**k``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Dyadic, DyadicLike, as_dyadic
from .errors import FormatError, RangeError, ShapeError
from .sbpoly import SBPolynomial, VarId

__all__ = [
    "QFormat",
    "Residue",
    "encode_signed",
    "decode_signed",
    "encode_value",
    "decode_value",
    "omega_unsigned",
    "omega_ie",
    "operand_polynomial",
    "validate_target_exponent",
]

_FMT_RE = re.compile(r"([su])(\d+)e(-?\d+)")


@dataclass(frozen=True)
class QFormat:
    n: int
    signed: bool = False
    k: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise FormatError(f"format needs n >= 1, got {self.n}")

    @property
    def qubit_count(self) -> int:
        return self.n + 1 if self.signed else self.n

    @property
    def mantissa_range(self) -> tuple[int, int]:
        if self.signed:
            return -(1 << self.n), (1 << self.n) - 1
        return 0, (1 << self.n) - 1

    def shifted(self, dk: int) -> QFormat:
        return QFormat(self.n, self.signed, self.k + dk)

    @classmethod
    def parse(cls, text: str) -> QFormat:
        m = _FMT_RE.fullmatch(text.strip())
        if not m:
            raise FormatError(f"bad format {text!r}; expected e.g. 's3e-2' or 'u4e0'")
        return cls(int(m.group(2)), m.group(1) == "s", int(m.group(3)))

    def __str__(self) -> str:
        return f"{'s' if self.signed else 'u'}{self.n}e{self.k}"


@dataclass(frozen=True)
class Residue:
    value: int
    modulus_bits: int

    def __post_init__(self):
        if not 0 <= self.value < (1 << self.modulus_bits):
            raise RangeError(f"{self.value} is not a residue mod 2^{self.modulus_bits}")

    def __int__(self) -> int:
        return self.value


def encode_signed(x: int, n: int) -> Residue:
    lo, hi = -(1 << n), (1 << n) - 1
    if not lo <= x <= hi:
        raise RangeError(f"{x} outside signed {n}-bit range [{lo}, {hi}]")
    return Residue(x % (1 << (n + 1)), n + 1)


def decode_signed(y: Residue | int, n: int) -> int:
    if isinstance(y, Residue):
        if y.modulus_bits != n + 1:
            raise FormatError(f"residue has {y.modulus_bits} bits, signed n={n} needs {n + 1}")
        y = y.value
    return y if y < (1 << n) else y - (1 << (n + 1))


def encode_value(x: DyadicLike, fmt: QFormat) -> Residue:
    mant = as_dyadic(x).shift(-fmt.k)
    if not mant.is_integer():
        raise RangeError(f"{x} has no integer mantissa at exponent {fmt.k}")
    mant = int(mant)
    if fmt.signed:
        return encode_signed(mant, fmt.n)
    lo, hi = fmt.mantissa_range
    if not lo <= mant <= hi:
        raise RangeError(f"mantissa {mant} outside unsigned {fmt.n}-bit range")
    return Residue(mant, fmt.n)


def decode_value(y: Residue | int, fmt: QFormat) -> Dyadic:
    if isinstance(y, Residue):
        if y.modulus_bits != fmt.qubit_count:
            raise FormatError(
                f"residue has {y.modulus_bits} bits, format {fmt} needs {fmt.qubit_count}"
            )
        y = y.value
    mant = decode_signed(y, fmt.n) if fmt.signed else y
    return Dyadic(mant, fmt.k)


def omega_unsigned(reg: str, n: int) -> SBPolynomial:
    """Binary expansion ``sum_i 2**i * reg[i]`` over ``n`` bits."""
    if n < 1:
        raise FormatError("n must be >= 1")
    return SBPolynomial({(VarId(reg, i),): 1 << i for i in range(n)})


def omega_ie(reg: str, n: int, m: int, k: int = 0) -> SBPolynomial:
    """Image extension: maps the bits of ``[x]_n`` to the value ``[x]_m``, times ``2**k``."""
    if m < n:
        raise FormatError(f"image extension needs m >= n (got n={n}, m={m})")
    terms = {(VarId(reg, i),): 1 << i for i in range(n + 1)}
    terms[(VarId(reg, n),)] += (1 << (m + 1)) - (1 << (n + 1))
    return SBPolynomial(terms).scale(Dyadic(1, k))


def operand_polynomial(reg: str, fmt: QFormat, target_qubits: int) -> SBPolynomial:
    """Value polynomial of an operand register as seen modulo ``2**target_qubits``.

    Signed operands are image-extended to the target width; when the target is
    narrower than the operand the plain expansion is already correct mod 2**target.
    """
    if fmt.signed:
        if target_qubits - 1 >= fmt.n:
            return omega_ie(reg, fmt.n, target_qubits - 1, fmt.k)
        return omega_unsigned(reg, fmt.n + 1).scale(Dyadic(1, fmt.k))
    return omega_unsigned(reg, fmt.n).scale(Dyadic(1, fmt.k))


def validate_target_exponent(op: str, k1: int, k2: int, k0: int) -> None:
    if op in ("add", "sub"):
        bound = min(k1, k2)
        if k0 > bound:
            raise ShapeError(f"{op}: target exponent {k0} must be <= min(k1, k2) = {bound}")
    elif op == "mul":
        bound = k1 + k2
        if k0 > bound:
            raise ShapeError(f"mul: target exponent {k0} must be <= k1 + k2 = {bound}")
    else:
        raise ValueError(f"unknown op {op!r}")


def dyadic_to_decimal(x: Dyadic) -> str:
    """Exact decimal text of a dyadic value (always terminates)."""
    f = x.to_fraction()
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f < 0 else ""
    f = abs(f)
    digits = f.denominator.bit_length() - 1  # 2**-e needs e decimal places
    scaled = f * Fraction(10**digits)
    s = str(scaled.numerator).rjust(digits + 1, "0")
    s = f"{s[:-digits]}.{s[-digits:]}".rstrip("0").rstrip(".")
    return sign + s
