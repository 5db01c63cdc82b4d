"""Carry-ripple reference arithmetic: classical oracles and Cuccaro-style circuits.

The multiplier uses the shift-and-add scheme with both branches turned into a
single adder: since ``a - b = ~(~a + b)``, a CX fan-out from ``y_i`` that negates
the accumulator before and after an unconditional adder picks between ``+`` and
``-``. Starting from ``s = (x << n2) - x`` the loop leaves ``s = 2*x*y``, whose
lowest bit is zero; the product is read from the remaining bits.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .circuit import Circuit, CircuitBuilder, Gate, cx, mcx, x
from .errors import RangeError, RegisterError

__all__ = [
    "RippleConfig",
    "classical_add",
    "classical_sub",
    "classical_mul",
    "cuccaro_adder",
    "ripple_multiplier",
]

Bits = Union[str, Sequence[int]]


@dataclass(frozen=True)
class RippleConfig:
    variant: str = "cuccaro"
    negation_trick: bool = True

    def __post_init__(self):
        if self.variant != "cuccaro":
            raise ValueError("only the cuccaro adder is implemented")
        if not self.negation_trick:
            raise ValueError("controlled add/sub is only built with the negation trick")


# classical -----------------------------------------------------------------------


def _to_le(b: Bits) -> list[int]:
    """Little-endian bit list; strings are read MSB first."""
    if isinstance(b, str):
        if set(b) - {"0", "1"}:
            raise ValueError(f"not a bit string: {b!r}")
        return [int(c) for c in reversed(b)]
    return [int(v) & 1 for v in b]


def _like(template: Bits, le: list[int]) -> Bits:
    if isinstance(template, str):
        return "".join(str(v) for v in reversed(le))
    return le


def _full_adder(a: int, b: int, c: int) -> tuple[int, int]:
    s = a ^ b ^ c
    return (a & b) | (c & (a ^ b)), s


def classical_add(xbits: Bits, ybits: Bits) -> Bits:
    """Full-adder chain; returns n+1 bits (carry on top)."""
    xs, ys = _to_le(xbits), _to_le(ybits)
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    out, carry = [], 0
    for a, b in zip(xs, ys):
        carry, s = _full_adder(a, b, carry)
        out.append(s)
    out.append(carry)
    return _like(xbits, out)


def _add_mod(s: list[int], t: list[int]) -> list[int]:
    return _to_le(classical_add(s, t))[: len(s)]


def _negate(s: list[int]) -> list[int]:
    return [1 - v for v in s]


def classical_sub(sbits: Bits, tbits: Bits) -> Bits:
    """``s - t`` modulo ``2**len(s)`` through ``~(~s + t)``."""
    s, t = _to_le(sbits), _to_le(tbits)
    return _like(sbits, _negate(_add_mod(_negate(s), t)))


def classical_mul(xbits: Bits, ybits: Bits) -> Bits:
    """Shift-and-add product with the add/sub branches; returns n1+n2 bits."""
    xs, ys = _to_le(xbits), _to_le(ybits)
    n1, n2 = len(xs), len(ys)
    w = n1 + n2 + 1

    def shifted(i: int) -> list[int]:
        return ([0] * i + xs + [0] * w)[:w]

    s = shifted(n2)
    s = _to_le(classical_sub(s, shifted(0)))
    for i in range(n2):
        if ys[i]:
            s = _add_mod(s, shifted(i))
        else:
            s = _to_le(classical_sub(s, shifted(i)))
    if s[0]:
        raise ArithmeticError("lowest bit of 2*x*y is not zero")
    return _like(xbits, s[1:])


# quantum ---------------------------------------------------------------------------


def _maj(c: int, b: int, a: int) -> list[Gate]:
    return [cx(a, b), cx(a, c), mcx((c, b), a)]


def _uma(c: int, b: int, a: int) -> list[Gate]:
    return [mcx((c, b), a), cx(a, c), cx(c, b)]


def adder_gates(a: Sequence[int], b: Sequence[int], anc: int, carry_out: int | None = None) -> list[Gate]:
    """``b += a`` (mod 2**len(b) unless ``carry_out`` is given); ``anc`` is a clean carry-in."""
    n = len(a)
    if n != len(b) or n < 1:
        raise RegisterError(f"adder needs equal nonempty registers, got {len(a)} and {len(b)}")
    chain = [anc] + list(a)
    gates: list[Gate] = []
    for i in range(n):
        gates += _maj(chain[i], b[i], a[i])
    if carry_out is not None:
        gates.append(cx(a[n - 1], carry_out))
    for i in range(n - 1, -1, -1):
        gates += _uma(chain[i], b[i], a[i])
    return gates


def _negation(ctrl: int | None, qs: Sequence[int], when_zero: bool = False) -> list[Gate]:
    if ctrl is None:
        return [x(q) for q in qs]
    gates = [cx(ctrl, q) for q in qs]
    if when_zero:
        gates = [x(ctrl)] + gates + [x(ctrl)]
    return gates


def cuccaro_adder(n: int, mode: str = "plain") -> Circuit:
    """MAJ/UMA ripple adder on registers ``x`` (addend) and ``y`` (accumulator).

    * plain: ``|x>|y>|0>_z -> |x>|x+y>`` with the carry in ``z``
    * subtract: ``y -> y - x mod 2**n``
    * controlled: add when ``ctl`` is 1, subtract when it is 0
    """
    if n < 1:
        raise RegisterError("n must be >= 1")
    if mode not in ("plain", "controlled", "subtract"):
        raise ValueError(f"unknown mode {mode!r}")
    b = CircuitBuilder()
    xs = list(b.add_register("x", n).qubits)
    ys = list(b.add_register("y", n).qubits)
    z = b.add_register("z", 1)[0] if mode == "plain" else None
    ctl = b.add_register("ctl", 1)[0] if mode == "controlled" else None
    anc = b.add_register("c", 1, role="ancilla")[0]
    core = adder_gates(xs, ys, anc, z)
    if mode == "plain":
        b.extend(core)
    else:
        neg = _negation(ctl, ys, when_zero=True)
        b.extend(neg + core + neg)
    return b.build()


def ripple_multiplier(n1: int, n2: int, cfg: RippleConfig | None = None, target_qubits: int | None = None) -> Circuit:
    """``|x>|y>|0> -> |x>|y>|x*y>`` from one copy, one subtraction and ``n2`` add/sub stages.

    The accumulator is split into ``s0`` (the discarded lowest bit, always 0 at
    the end) and ``out`` which holds the n1+n2 product bits. ``pad`` extends the
    addend with zeros for the wider low-order stages; ``c`` is the carry ancilla.
    """
    RippleConfig() if cfg is None else cfg
    if n1 < 1 or n2 < 1:
        raise RegisterError("operand sizes must be >= 1")
    w = n1 + n2 + 1
    if target_qubits is not None and target_qubits < n1 + n2:
        raise RangeError(f"target needs {n1 + n2} qubits, got {target_qubits}")
    b = CircuitBuilder()
    xs = list(b.add_register("x", n1).qubits)
    ys = list(b.add_register("y", n2).qubits)
    s0 = b.add_register("s0", 1, role="ancilla")[0]
    out = list(b.add_register("out", n1 + n2).qubits)
    pad = list(b.add_register("pad", n2 + 1, role="ancilla").qubits)
    anc = b.add_register("c", 1, role="ancilla")[0]
    s = [s0] + out
    addend = xs + pad

    # s = x << n2, then s -= x
    b.extend(cx(xs[j], s[n2 + j]) for j in range(n1))
    neg = _negation(None, s)
    b.extend(neg + adder_gates(addend[:w], s, anc) + neg)
    for i in range(n2):
        part = s[i:]
        neg = _negation(ys[i], part, when_zero=True)
        b.extend(neg + adder_gates(addend[: len(part)], part, anc) + neg)
    return b.build()
