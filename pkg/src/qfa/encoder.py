"""Semi-boolean polynomial encoder.

``encode_sbp`` builds ``QFT^dagger . U_G(Omega(x)) . H^m`` which maps
``|x>|0> -> |x>|Omega(x) mod 2^m>``: every monomial contributes a phase ladder
on the target register controlled by its variables, and the phases add up in the
Fourier basis. ``encode_sbp_inplace`` swaps the H layer for a full QFT so the
value is accumulated onto whatever the target already holds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import math

import numpy as np

from .circuit import Circuit, CircuitBuilder, Gate, Register, cp, h, mcp, mcx, p, swap
from .dyadic import Dyadic, DyadicLike, as_dyadic
from .errors import AncillaError, NonIntegerPolynomialError, RegisterError
from .numfmt import QFormat
from .sbpoly import Monomial, SBPolynomial, VarId

__all__ = [
    "EncoderConfig",
    "ScheduledMonomial",
    "Synthesis",
    "qft",
    "qft_gates",
    "qft_inverse_gates",
    "u_g_angles",
    "u_g_gates",
    "order_monomials",
    "encode_sbp",
    "encode_sbp_inplace",
    "synthesize",
]

ORDERINGS = ("as_given", "heuristic", "reversed_heuristic")
STRATEGIES = ("naive_mcp", "ancilla_controlled")
Ordering = Union[str, Sequence[Sequence[VarId]]]


@dataclass(frozen=True)
class EncoderConfig:
    ug_strategy: str = "naive_mcp"
    ancilla_pool: int = 0
    swapless_qft: bool = False
    ordering: Ordering = "as_given"
    # drop U_G phases with |angle| below this many radians (0 keeps everything nonzero)
    angle_epsilon: float = 0.0

    def __post_init__(self):
        if self.ug_strategy not in STRATEGIES:
            raise ValueError(f"ug_strategy must be one of {STRATEGIES}")
        if self.ancilla_pool < 0:
            raise ValueError("ancilla_pool must be >= 0")
        if self.ug_strategy == "ancilla_controlled" and self.ancilla_pool < 1:
            raise AncillaError("ancilla_controlled needs ancilla_pool >= 1")
        if isinstance(self.ordering, str):
            if self.ordering not in ORDERINGS:
                raise ValueError(f"ordering must be one of {ORDERINGS} or an explicit list")
        else:
            object.__setattr__(
                self, "ordering", tuple(tuple(sorted(VarId(*v) for v in vs)) for vs in self.ordering)
            )


@dataclass(frozen=True)
class ScheduledMonomial:
    monomial: Monomial
    ancilla: int | None = None
    start_layer: int = 0  # pre-transpile layer of the first emitted gate


@dataclass
class Synthesis:
    circuit: Circuit
    schedule: list[ScheduledMonomial] = field(default_factory=list)


# QFT --------------------------------------------------------------------------


def qft_gates(qubits: Sequence[int], multiplier: int = 1) -> list[Gate]:
    """QFT without the final swaps: output weight ``i`` ends on ``qubits[m-1-i]``.

    With ``multiplier`` odd every CP(phi) becomes CP(multiplier*phi), which turns
    the transform of ``|x>`` into the transform of ``|multiplier*x mod 2^m>``.
    """
    qs = list(qubits)
    out: list[Gate] = []
    for j in range(len(qs) - 1, -1, -1):
        out.append(h(qs[j]))
        for k in range(j - 1, -1, -1):
            a = Dyadic(multiplier, -(j - k))
            if a.mod(2):
                out.append(cp(qs[k], qs[j], a))
    return out


def qft_inverse_gates(qubits: Sequence[int]) -> list[Gate]:
    out = []
    for g in reversed(qft_gates(qubits)):
        out.append(g if g.kind == "H" else cp(g.qubits[0], g.qubits[1], -g.angle))
    return out


def _swap_layer(qubits: Sequence[int]) -> list[Gate]:
    m = len(qubits)
    return [swap(qubits[i], qubits[m - 1 - i]) for i in range(m // 2)]


def qft(m: int, swapless: bool = False) -> Circuit:
    b = CircuitBuilder()
    reg = b.add_register("q", m)
    qs = list(reg.qubits)
    b.extend(qft_gates(qs))
    if swapless:
        return b.build(output_permutation=[qs[m - 1 - i] for i in range(m)])
    b.extend(_swap_layer(qs))
    return b.build()


# U_G --------------------------------------------------------------------------


def u_g_angles(y: DyadicLike, m: int, epsilon: float = 0.0) -> list[tuple[int, Dyadic]]:
    """Nonzero phases of U_G(y) as (weight, angle in units of pi).

    Weight ``i`` gets ``2*pi*y*2**i / 2**m``, reduced to (-pi, pi].
    """
    y = as_dyadic(y)
    out = []
    for i in range(m):
        a = y.shift(i + 1 - m).mod_symmetric(2)
        if not a:
            continue
        if epsilon and abs(float(a)) * math.pi < epsilon:
            continue
        out.append((i, a))
    return out


def u_g_gates(
    y: DyadicLike,
    target: Sequence[int],
    controls: Sequence[int] = (),
    reversed_target: bool = False,
    epsilon: float = 0.0,
) -> list[Gate]:
    m = len(target)
    gates = []
    for i, a in u_g_angles(y, m, epsilon):
        t = target[m - 1 - i] if reversed_target else target[i]
        gates.append(mcp(controls, t, a))
    return gates


# synthesis ----------------------------------------------------------------------


def _domain_spec(p: SBPolynomial, domain: Mapping[str, int | QFormat] | None) -> dict[str, tuple[int, QFormat | None]]:
    need = p.registers()
    out: dict[str, tuple[int, QFormat | None]] = {}
    if domain is None:
        return {r: (n, None) for r, n in sorted(need.items())}
    for name, spec in domain.items():
        if isinstance(spec, QFormat):
            out[name] = (spec.qubit_count, spec)
        else:
            out[name] = (int(spec), None)
    for r, n in need.items():
        if r not in out:
            raise RegisterError(f"polynomial references register {r!r} missing from the domain")
        if n > out[r][0]:
            raise RegisterError(f"polynomial uses {r}[{n - 1}] but register {r} has {out[r][0]} qubits")
    return out


class _Synth:
    """Emits gates while tracking the per-qubit ASAP layer of the circuit so far."""

    def __init__(self, b: CircuitBuilder, cfg: EncoderConfig, target: Register, var_qubit: Mapping[VarId, int], ancillas: Sequence[int]):
        self.b = b
        self.cfg = cfg
        self.target = list(target.qubits)
        self.var_qubit = var_qubit
        self.ancillas = list(ancillas)
        self.levels = [0] * b.qubit_count
        self.schedule: list[ScheduledMonomial] = []

    def emit(self, g: Gate) -> None:
        qs = g.qubits
        lv = self.levels
        lvl = max(lv[q] for q in qs) + 1
        for q in qs:
            lv[q] = lvl
        self.b.append(g)

    def emit_all(self, gates) -> None:
        for g in gates:
            self.emit(g)

    def emit_monomial(self, mono: Monomial) -> None:
        cfg = self.cfg
        gates_ctrl = [self.var_qubit[v] for v in mono.vars]
        angles = u_g_angles(mono.coeff, len(self.target), cfg.angle_epsilon)
        if not angles:
            return
        m = len(self.target)
        rev = cfg.swapless_qft

        def tq(i: int) -> int:
            return self.target[m - 1 - i] if rev else self.target[i]

        start = max((self.levels[q] for q in gates_ctrl), default=0)
        if len(gates_ctrl) >= 2 and cfg.ug_strategy == "ancilla_controlled":
            anc = min(self.ancillas, key=lambda a: (self.levels[a], a))
            self.emit(mcx(gates_ctrl, anc))
            for i, a in angles:
                self.emit(cp(anc, tq(i), a))
            self.emit(mcx(gates_ctrl, anc))
            self.schedule.append(ScheduledMonomial(mono, anc, start))
        else:
            for i, a in angles:
                self.emit(mcp(gates_ctrl, tq(i), a))
            self.schedule.append(ScheduledMonomial(mono, None, start))

    def emit_polynomial(self, p: SBPolynomial) -> None:
        monos = p.monomials
        ordering = self.cfg.ordering
        if not isinstance(ordering, str):
            by_vars = {mo.vars: mo for mo in monos}
            if sorted(ordering) != sorted(by_vars):
                raise ValueError("explicit ordering must list every monomial's variables exactly once")
            for vs in ordering:
                self.emit_monomial(by_vars[vs])
        elif ordering == "as_given" or len(monos) <= 1:
            for mo in monos:
                self.emit_monomial(mo)
        else:
            self._emit_greedy(monos, worst=ordering == "reversed_heuristic")

    def _emit_greedy(self, monos: list[Monomial], worst: bool) -> None:
        # cost of a monomial = latest layer among the qubits of its variables
        nq = self.b.qubit_count
        dmax = max(mo.degree for mo in monos) or 1
        cand = np.full((len(monos), dmax), nq, dtype=np.int64)  # pad -> depth-0 slot
        for r, mo in enumerate(monos):
            for c, v in enumerate(mo.vars):
                cand[r, c] = self.var_qubit[v]
        depth = np.zeros(nq + 1, dtype=np.int64)
        for q in set(self.var_qubit.values()):
            depth[q] = self.levels[q]
        used = np.zeros(len(monos), dtype=bool)
        for _ in range(len(monos)):
            cost = depth[cand].max(axis=1)
            if worst:
                cost[used] = -1
                r = int(np.argmax(cost))
            else:
                cost[used] = np.iinfo(np.int64).max
                r = int(np.argmin(cost))
            used[r] = True
            mo = monos[r]
            self.emit_monomial(mo)
            for v in mo.vars:
                q = self.var_qubit[v]
                depth[q] = self.levels[q]


def synthesize(
    p: SBPolynomial,
    m: int,
    cfg: EncoderConfig | None = None,
    *,
    domain: Mapping[str, int | QFormat] | None = None,
    target: str = "out",
    target_fmt: QFormat | None = None,
    inplace: bool = False,
) -> Synthesis:
    cfg = cfg or EncoderConfig()
    if m < 1:
        raise ValueError("target register needs m >= 1 qubits")
    if not p.is_integer():
        bad = next(mo for mo in p.monomials if not mo.coeff.is_integer())
        raise NonIntegerPolynomialError(f"encoder needs integer coefficients; offending monomial {bad}")
    if target in p.registers():
        kind = "in-place target" if inplace else "target"
        raise RegisterError(f"polynomial references the {kind} register {target!r}")
    dom = _domain_spec(p, domain)
    if target in dom:
        raise RegisterError(f"register {target!r} is both domain and target")

    b = CircuitBuilder()
    var_qubit: dict[VarId, int] = {}
    for name, (size, fmt) in dom.items():
        reg = b.add_register(name, size, fmt)
        for i in range(size):
            var_qubit[VarId(name, i)] = reg[i]
    treg = b.add_register(target, m, target_fmt)
    ancillas: list[int] = []
    if cfg.ug_strategy == "ancilla_controlled":
        ancillas = list(b.add_register("anc", cfg.ancilla_pool, role="ancilla").qubits)
    need_scratch = max(0, p.degree - 2) if cfg.ug_strategy == "ancilla_controlled" else 0
    if need_scratch:
        b.add_register("scratch", need_scratch, role="scratch")

    s = _Synth(b, cfg, treg, var_qubit, ancillas)
    tq = list(treg.qubits)
    if inplace:
        s.emit_all(qft_gates(tq))
        if not cfg.swapless_qft:
            s.emit_all(_swap_layer(tq))
    else:
        s.emit_all(h(q) for q in tq)
    s.emit_polynomial(p)
    if not cfg.swapless_qft:
        s.emit_all(_swap_layer(tq))
    s.emit_all(qft_inverse_gates(tq))
    return Synthesis(b.build(), s.schedule)


def encode_sbp(p: SBPolynomial, m: int, cfg: EncoderConfig | None = None, **layout) -> Circuit:
    """``|x>|0> -> |x>|p(x) mod 2^m>`` on a fresh target register."""
    return synthesize(p, m, cfg, **layout).circuit


def encode_sbp_inplace(p: SBPolynomial, m: int, cfg: EncoderConfig | None = None, **layout) -> Circuit:
    """``|x>|y> -> |x>|(y + p(x)) mod 2^m>``."""
    return synthesize(p, m, cfg, inplace=True, **layout).circuit


def order_monomials(
    p: SBPolynomial, mode: Ordering = "heuristic", m: int | None = None, cfg: EncoderConfig | None = None
) -> list[Monomial]:
    """Order in which the encoder would emit the monomials of ``p``.

    The heuristic modes schedule against the layering of the partially built
    circuit, so the answer depends on the target size ``m`` and the strategy;
    by default one target qubit per polynomial variable and a single ancilla.
    """
    if m is None:
        m = max(1, len(p.variables()))
    if cfg is None:
        cfg = EncoderConfig("ancilla_controlled", 1, ordering=mode)
    else:
        cfg = EncoderConfig(cfg.ug_strategy, cfg.ancilla_pool, cfg.swapless_qft, mode, cfg.angle_epsilon)
    return [sm.monomial for sm in synthesize(p, m, cfg).schedule]
