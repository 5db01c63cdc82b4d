"""Exact dyadic rationals ``numerator * 2**exp2``.

Every coefficient and every phase angle (as a multiple of pi) in this package is
dyadic, so all bookkeeping stays exact until a float is requested explicitly.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["Dyadic", "DyadicLike", "as_dyadic"]

DyadicLike = Union["Dyadic", int, Fraction]


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1


class Dyadic:
    """Immutable dyadic rational in canonical form.

    Canonical means the numerator is odd, or the value is zero with ``exp2 == 0``.
    """

    __slots__ = ("numerator", "exp2")

    numerator: int
    exp2: int

    def __init__(self, numerator: int = 0, exp2: int = 0):
        if numerator == 0:
            exp2 = 0
        else:
            tz = _trailing_zeros(numerator)
            if tz:
                numerator >>= tz
                exp2 += tz
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exp2", exp2)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.numerator, self.exp2))

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> Dyadic:
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, -(den.bit_length() - 1))

    def to_fraction(self) -> Fraction:
        if self.exp2 >= 0:
            return Fraction(self.numerator << self.exp2)
        return Fraction(self.numerator, 1 << -self.exp2)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.numerator << self.exp2

    def __index__(self) -> int:
        return int(self)

    def is_integer(self) -> bool:
        return self.exp2 >= 0

    def shift(self, k: int) -> Dyadic:
        """Multiply by ``2**k``."""
        if self.numerator == 0:
            return self
        return Dyadic(self.numerator, self.exp2 + k)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: DyadicLike) -> Dyadic:
        other = as_dyadic(other)
        if self.numerator == 0:
            return other
        if other.numerator == 0:
            return self
        e = min(self.exp2, other.exp2)
        return Dyadic(
            (self.numerator << (self.exp2 - e)) + (other.numerator << (other.exp2 - e)), e
        )

    __radd__ = __add__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.numerator, self.exp2)

    def __pos__(self) -> Dyadic:
        return self

    def __abs__(self) -> Dyadic:
        return self if self.numerator >= 0 else -self

    def __sub__(self, other: DyadicLike) -> Dyadic:
        return self + (-as_dyadic(other))

    def __rsub__(self, other: DyadicLike) -> Dyadic:
        return as_dyadic(other) - self

    def __mul__(self, other: DyadicLike) -> Dyadic:
        other = as_dyadic(other)
        return Dyadic(self.numerator * other.numerator, self.exp2 + other.exp2)

    __rmul__ = __mul__

    def mod(self, m: int) -> Dyadic:
        """Representative of ``self`` modulo the positive integer ``m``, in ``[0, m)``."""
        if self.exp2 >= 0:
            return Dyadic((self.numerator << self.exp2) % m)
        return Dyadic(self.numerator % (m << -self.exp2), self.exp2)

    def mod_symmetric(self, m: int) -> Dyadic:
        """Representative modulo the even integer ``m`` in ``(-m/2, m/2]``."""
        r = self.mod(m)
        half = m // 2
        if r > half:
            r = r - m
        return r

    # comparison ---------------------------------------------------------

    def _cmp_key(self, other: Dyadic) -> tuple[int, int]:
        e = min(self.exp2, other.exp2)
        return self.numerator << (self.exp2 - e), other.numerator << (other.exp2 - e)

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.numerator == other.numerator and self.exp2 == other.exp2
        if isinstance(other, (int, Rational)):
            return self.to_fraction() == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __lt__(self, other: DyadicLike) -> bool:
        a, b = self._cmp_key(as_dyadic(other))
        return a < b

    def __le__(self, other: DyadicLike) -> bool:
        a, b = self._cmp_key(as_dyadic(other))
        return a <= b

    def __gt__(self, other: DyadicLike) -> bool:
        a, b = self._cmp_key(as_dyadic(other))
        return a > b

    def __ge__(self, other: DyadicLike) -> bool:
        a, b = self._cmp_key(as_dyadic(other))
        return a >= b

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __repr__(self) -> str:
        return f"Dyadic({self.numerator}, {self.exp2})"

    def __str__(self) -> str:
        return str(self.to_fraction())


def as_dyadic(value: DyadicLike) -> Dyadic:
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, bool):
        return Dyadic(int(value))
    if isinstance(value, int):
        return Dyadic(value)
    if isinstance(value, (Fraction, Rational)):
        return Dyadic.from_fraction(Fraction(value))
    if isinstance(value, float):
        # floats are dyadic by construction; as_integer_ratio is exact
        return Dyadic.from_fraction(Fraction(*value.as_integer_ratio()))
    if isinstance(value, str):
        return Dyadic.from_fraction(Fraction(value))
    raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")
