"""Semi-boolean polynomials: multilinear polynomials over boolean register bits.

A polynomial is stored as a mapping from a sorted tuple of variables to a
nonzero dyadic coefficient. Since every variable is boolean, ``x*x == x`` and
products collapse to the union of their variable sets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from .dyadic import Dyadic, DyadicLike, as_dyadic
from .errors import MissingVariableError

__all__ = [
    "VarId",
    "Monomial",
    "SBPolynomial",
    "var",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_eval",
    "poly_is_integer",
    "poly_degree",
    "assignment",
]


class VarId(NamedTuple):
    register: str
    bit: int

    def __str__(self) -> str:
        return f"{self.register}[{self.bit}]"


Vars = tuple[VarId, ...]


@dataclass(frozen=True)
class Monomial:
    coeff: Dyadic
    vars: Vars

    @property
    def degree(self) -> int:
        return len(self.vars)

    def __str__(self) -> str:
        return _format_term(self.coeff, self.vars, first=True)


def _grlex(vars_: Vars) -> tuple[int, Vars]:
    return (len(vars_), vars_)


def _merge(a: Vars, b: Vars) -> Vars:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(set(a).union(b)))


class SBPolynomial:
    """Immutable canonical semi-boolean polynomial."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Vars, DyadicLike] | Iterable[tuple[Vars, DyadicLike]] = ()):
        acc: dict[Vars, Dyadic] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for vars_, c in items:
            key = tuple(sorted(set(VarId(*v) for v in vars_)))
            c = as_dyadic(c)
            if key in acc:
                acc[key] = acc[key] + c
            else:
                acc[key] = c
        self._terms = {k: acc[k] for k in sorted(acc, key=_grlex) if acc[k]}
        self._hash = None

    @classmethod
    def _from_canonical(cls, terms: dict[Vars, Dyadic]) -> SBPolynomial:
        obj = cls.__new__(cls)
        obj._terms = {k: terms[k] for k in sorted(terms, key=_grlex) if terms[k]}
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: DyadicLike) -> SBPolynomial:
        return cls({(): c})

    @classmethod
    def zero(cls) -> SBPolynomial:
        return cls()

    # access -------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Vars, Dyadic]:
        return self._terms

    @property
    def monomials(self) -> list[Monomial]:
        return [Monomial(c, v) for v, c in self._terms.items()]

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> list[VarId]:
        out: set[VarId] = set()
        for v in self._terms:
            out.update(v)
        return sorted(out)

    def registers(self) -> dict[str, int]:
        """Register name -> minimal size covering every referenced bit."""
        sizes: dict[str, int] = {}
        for v in self.variables():
            sizes[v.register] = max(sizes.get(v.register, 0), v.bit + 1)
        return sizes

    def constant_term(self) -> Dyadic:
        return self._terms.get((), Dyadic(0))

    # algebra ------------------------------------------------------------

    def __add__(self, other: SBPolynomial | DyadicLike) -> SBPolynomial:
        if not isinstance(other, SBPolynomial):
            other = SBPolynomial.constant(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc[k] + c if k in acc else c
        return SBPolynomial._from_canonical(acc)

    __radd__ = __add__

    def __neg__(self) -> SBPolynomial:
        return SBPolynomial._from_canonical({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: SBPolynomial | DyadicLike) -> SBPolynomial:
        if not isinstance(other, SBPolynomial):
            other = SBPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other: DyadicLike) -> SBPolynomial:
        return SBPolynomial.constant(other) - self

    def __mul__(self, other: SBPolynomial | DyadicLike) -> SBPolynomial:
        if not isinstance(other, SBPolynomial):
            return self.scale(other)
        acc: dict[Vars, Dyadic] = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = _merge(ka, kb)
                c = ca * cb
                acc[k] = acc[k] + c if k in acc else c
        return SBPolynomial._from_canonical(acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> SBPolynomial:
        if e < 0:
            raise ValueError("negative exponent")
        out = SBPolynomial.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c: DyadicLike) -> SBPolynomial:
        c = as_dyadic(c)
        return SBPolynomial._from_canonical({k: v * c for k, v in self._terms.items()})

    def evaluate(self, assign: Mapping[VarId, int]) -> Dyadic:
        total = Dyadic(0)
        for vars_, c in self._terms.items():
            on = True
            for v in vars_:
                try:
                    bit = assign[v]
                except KeyError:
                    raise MissingVariableError(f"no value for {v}") from None
                if not bit:
                    on = False
            if on:
                total = total + c
        return total

    def is_integer(self) -> bool:
        return all(c.exp2 >= 0 for c in self._terms.values())

    @property
    def degree(self) -> int:
        return max((len(k) for k in self._terms), default=0)

    # identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, SBPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Dyadic)):
            return self == SBPolynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"SBPolynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (vars_, c) in enumerate(self._terms.items()):
            parts.append(_format_term(c, vars_, first=i == 0))
        return "".join(parts)

    @classmethod
    def parse(cls, text: str) -> SBPolynomial:
        """Inverse of ``str``: e.g. ``"4*x[0]*x[2] - 3*y[1] + 1/2"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"[+-][^+-]+", s)
        if "".join(pieces) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        acc: dict[Vars, Dyadic] = {}
        for piece in pieces:
            sign = -1 if piece[0] == "-" else 1
            coeff = Dyadic(sign)
            vars_: list[VarId] = []
            for factor in piece[1:].split("*"):
                m = _VAR_RE.fullmatch(factor)
                if m:
                    vars_.append(VarId(m.group(1), int(m.group(2))))
                elif _NUM_RE.fullmatch(factor):
                    coeff = coeff * as_dyadic(factor)
                else:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
            key = tuple(sorted(set(vars_)))
            acc[key] = acc[key] + coeff if key in acc else coeff
        return cls._from_canonical(acc)


_VAR_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)\[(\d+)\]")
_NUM_RE = re.compile(r"\d+(/\d+)?")


def _format_term(c: Dyadic, vars_: Vars, first: bool) -> str:
    mag = abs(c)
    if first:
        sign = "-" if c < 0 else ""
    else:
        sign = " - " if c < 0 else " + "
    factors = [str(v) for v in vars_]
    if mag != 1 or not factors:
        factors.insert(0, str(mag))
    return sign + "*".join(factors)


def var(register: str, bit: int) -> SBPolynomial:
    return SBPolynomial({(VarId(register, bit),): 1})


def poly_add(p: SBPolynomial, q: SBPolynomial) -> SBPolynomial:
    return p + q


def poly_mul(p: SBPolynomial, q: SBPolynomial) -> SBPolynomial:
    return p * q


def poly_scale(p: SBPolynomial, c: DyadicLike) -> SBPolynomial:
    return p.scale(c)


def poly_eval(p: SBPolynomial, assign: Mapping[VarId, int]) -> Dyadic:
    return p.evaluate(assign)


def poly_is_integer(p: SBPolynomial) -> bool:
    return p.is_integer()


def poly_degree(p: SBPolynomial) -> int:
    return p.degree


def assignment(values: Mapping[str, int], sizes: Mapping[str, int]) -> dict[VarId, int]:
    """Little-endian bit assignment for whole-register integer values."""
    out = {}
    for reg, size in sizes.items():
        v = values.get(reg, 0)
        for i in range(size):
            out[VarId(reg, i)] = (v >> i) & 1
    return out
