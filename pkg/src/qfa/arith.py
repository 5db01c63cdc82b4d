"""Arithmetic circuit builders on top of the SBP encoder."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

import sympy

from .circuit import Circuit, CircuitBuilder
from .dyadic import Dyadic, as_dyadic
from .encoder import EncoderConfig, encode_sbp, encode_sbp_inplace, qft_gates, qft_inverse_gates
from .errors import InvertibilityError, NonIntegerPolynomialError, RangeError, RegisterError, ShapeError
from .numfmt import QFormat, operand_polynomial, validate_target_exponent
from .sbpoly import SBPolynomial

__all__ = [
    "ArithSpec",
    "default_target",
    "arith_polynomial",
    "build_arith",
    "poly_polynomial",
    "build_poly_eval",
    "inplace_add",
    "inplace_mul_const",
    "semi_inplace_mul_const",
]

OPS = ("add", "sub", "mul", "poly")
PolyLike = Union[str, sympy.Expr]
FormatLike = Union[QFormat, int, str]


def _fmt(f: FormatLike) -> QFormat:
    if isinstance(f, QFormat):
        return f
    if isinstance(f, str):
        return QFormat.parse(f)
    return QFormat(int(f))


@dataclass(frozen=True)
class ArithSpec:
    op: str
    operands: tuple[QFormat, ...]
    target: QFormat | None = None  # None -> default_target
    encoder: EncoderConfig = field(default_factory=EncoderConfig)
    poly: PolyLike | None = None
    names: tuple[str, ...] = ("x", "y")

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"op must be one of {OPS}")
        object.__setattr__(self, "operands", tuple(_fmt(f) for f in self.operands))
        if self.target is not None:
            object.__setattr__(self, "target", _fmt(self.target))
        if self.op == "poly":
            if self.poly is None:
                raise ValueError("op 'poly' needs a polynomial")
        elif len(self.operands) != 2:
            raise ValueError(f"{self.op} takes exactly two operands")
        if len(self.names) < len(self.operands):
            raise ValueError("not enough operand names")

    @property
    def resolved_target(self) -> QFormat:
        return self.target if self.target is not None else default_target(self.op, self.operands)


def default_target(op: str, operands: Sequence[QFormat]) -> QFormat:
    """Target wide enough for typical results: max(n)+1 bits for add/sub, n1+n2 for mul.

    For add/sub at different exponents the widths are taken after aligning both
    mantissas to the smaller exponent.
    """
    fx, fy = operands[:2]
    signed = fx.signed or fy.signed
    if op in ("add", "sub"):
        k0 = min(fx.k, fy.k)
        return QFormat(max(fx.n + fx.k - k0, fy.n + fy.k - k0) + 1, signed, k0)
    if op == "mul":
        return QFormat(fx.n + fy.n, signed, fx.k + fy.k)
    raise ValueError(f"no default target for {op!r}")


def _shift_to_target(p: SBPolynomial, k0: int) -> SBPolynomial:
    p = p.scale(Dyadic(1, -k0))
    if not p.is_integer():
        bad = next(mo for mo in p.monomials if not mo.coeff.is_integer())
        raise NonIntegerPolynomialError(f"shifted polynomial has non-integer monomial {bad} at target exponent {k0}")
    return p


def arith_polynomial(spec: ArithSpec) -> tuple[SBPolynomial, QFormat]:
    """The integer SBP the encoder receives, and the target format."""
    target = spec.resolved_target
    if spec.op == "poly":
        fmts = dict(zip(spec.names, spec.operands))
        return poly_polynomial(spec.poly, fmts, target), target
    fx, fy = spec.operands
    validate_target_exponent(spec.op, fx.k, fy.k, target.k)
    m = target.qubit_count
    nx, ny = spec.names[:2]
    px = operand_polynomial(nx, fx, m)
    py = operand_polynomial(ny, fy, m)
    p = {"add": px + py, "sub": px - py, "mul": px * py}[spec.op]
    return _shift_to_target(p, target.k), target


def build_arith(spec: ArithSpec) -> Circuit:
    """``|x>|y>|0> -> |x>|y>|x op y>`` with the result in register ``out``."""
    p, target = arith_polynomial(spec)
    domain = dict(zip(spec.names, spec.operands))
    return encode_sbp(p, target.qubit_count, spec.encoder, domain=domain, target="out", target_fmt=target)


def _coeff(c) -> Dyadic:
    f = Fraction(int(c.p), int(c.q))
    if f.denominator & (f.denominator - 1):
        raise NonIntegerPolynomialError(f"coefficient {c} is not dyadic")
    return as_dyadic(f)


def poly_polynomial(p: PolyLike, formats: Mapping[str, FormatLike], target: FormatLike) -> SBPolynomial:
    """Substitute each operand's value polynomial into ``p`` and shift to the target."""
    target = _fmt(target)
    fmts = {k: _fmt(v) for k, v in formats.items()}
    syms = {name: sympy.Symbol(name) for name in fmts}
    expr = sympy.sympify(p, locals=syms) if isinstance(p, str) else p
    unknown = {str(s) for s in expr.free_symbols} - set(fmts)
    if unknown:
        raise RegisterError(f"polynomial uses operands without a format: {sorted(unknown)}")
    names = list(fmts)
    poly = sympy.Poly(sympy.expand(expr), *[syms[n] for n in names])
    m = target.qubit_count
    omegas = [operand_polynomial(n, fmts[n], m) for n in names]
    total = SBPolynomial.zero()
    for exps, c in poly.terms():
        term = SBPolynomial.constant(_coeff(c))
        for om, e in zip(omegas, exps):
            if e:
                term = term * om**e
        total = total + term
    return _shift_to_target(total, target.k)


def build_poly_eval(
    p: PolyLike, formats: Mapping[str, FormatLike], target: FormatLike, cfg: EncoderConfig | None = None
) -> Circuit:
    target = _fmt(target)
    sbp = poly_polynomial(p, formats, target)
    domain = {k: _fmt(v) for k, v in formats.items()}
    return encode_sbp(sbp, target.qubit_count, cfg, domain=domain, target="out", target_fmt=target)


def inplace_add(
    target: FormatLike, source: FormatLike, sign: str | int = "+", cfg: EncoderConfig | None = None
) -> Circuit:
    """``|x>|y> -> |x>|y +- x>`` with source register ``x`` and target ``y``."""
    ft, fs = _fmt(target), _fmt(source)
    if sign in ("+", 1):
        s = 1
    elif sign in ("-", -1):
        s = -1
    else:
        raise ValueError("sign must be '+' or '-'")
    if fs.k < ft.k:
        raise ShapeError(f"source exponent {fs.k} is below target exponent {ft.k}")
    m = ft.qubit_count
    p = operand_polynomial("x", fs, m).scale(Dyadic(s, -ft.k))
    return encode_sbp_inplace(p, m, cfg, domain={"x": fs}, target="y", target_fmt=ft)


def inplace_mul_const(a: int, n: int, fmt: QFormat | None = None) -> Circuit:
    """``|x> -> |a*x mod 2**n>`` for odd ``a``: a modified QFT followed by QFT^dagger."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if a % 2 == 0:
        raise InvertibilityError(f"a={a} is even; multiplication mod 2^n is invertible only for odd a")
    b = CircuitBuilder()
    qs = list(b.add_register("x", n, fmt).qubits)
    b.extend(qft_gates(qs, multiplier=a))
    b.extend(qft_inverse_gates(qs))
    return b.build()


def semi_inplace_mul_const(a: int, fmt: FormatLike) -> tuple[Circuit, QFormat]:
    """Multiply by ``a = b * 2**k``: ``b`` in place, ``2**k`` as an exponent shift."""
    fmt = _fmt(fmt)
    if a < 1:
        raise RangeError(f"a must be a positive integer, got {a}")
    k = (a & -a).bit_length() - 1
    b = a >> k
    out_fmt = fmt.shifted(k)
    if b == 1:
        cb = CircuitBuilder()
        cb.add_register("x", fmt.qubit_count, out_fmt)
        return cb.build(), out_fmt
    return inplace_mul_const(b, fmt.qubit_count, out_fmt), out_fmt
