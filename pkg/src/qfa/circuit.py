"""Gate-level circuit representation.

Qubit ``i`` of a register carries weight ``2**i`` (little-endian). All rotation
angles are stored as exact dyadic multiples of pi; they only become floats in
the simulator and the QASM emitter.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Sequence

from .dyadic import Dyadic, DyadicLike, as_dyadic
from .errors import AncillaError, RegisterError
from .numfmt import QFormat

__all__ = [
    "Gate",
    "Register",
    "Circuit",
    "CircuitBuilder",
    "h", "x", "sx", "sxdg", "p", "rz", "cx", "cp", "swap", "mcx", "mcp", "gms",
    "depth",
    "qubit_depths",
    "gate_counts",
    "inverse",
    "compose",
    "transpile",
    "iter_lowered",
    "lowered_metrics",
    "BASIS",
]

BASIS = frozenset({"CX", "RZ", "SX"})
_ZERO = Dyadic(0)
_SELF_ADJOINT = frozenset({"H", "X", "CX", "SWAP", "MCX"})
_PHASE_KINDS = frozenset({"P", "CP", "MCP"})


@dataclass(frozen=True, slots=True)
class Gate:
    """One gate. For controlled kinds the target is the last qubit.

    ``angle`` is a multiple of pi. ``chi`` holds the upper-triangular coupling
    entries (row-major, multiples of pi) of a GMS gate.
    """

    kind: str
    qubits: tuple[int, ...]
    angle: Dyadic | None = None
    chi: tuple[Dyadic, ...] | None = None

    def __post_init__(self):
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} on repeated qubits {self.qubits}")

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1] if self.kind in ("CX", "CP", "MCX", "MCP") else ()

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def __str__(self) -> str:
        a = f"({self.angle}π)" if self.angle is not None else ""
        return f"{self.kind}{a}{list(self.qubits)}"


def _norm2(a: DyadicLike) -> Dyadic:
    return as_dyadic(a).mod_symmetric(2)


def _norm4(a: DyadicLike) -> Dyadic:
    return as_dyadic(a).mod_symmetric(4)


def h(q: int) -> Gate:
    return Gate("H", (q,))


def x(q: int) -> Gate:
    return Gate("X", (q,))


def sx(q: int) -> Gate:
    return Gate("SX", (q,))


def sxdg(q: int) -> Gate:
    return Gate("SXDG", (q,))


def p(q: int, angle: DyadicLike) -> Gate:
    return Gate("P", (q,), _norm2(angle))


def rz(q: int, angle: DyadicLike) -> Gate:
    return Gate("RZ", (q,), _norm4(angle))


def cx(c: int, t: int) -> Gate:
    return Gate("CX", (c, t))


def cp(c: int, t: int, angle: DyadicLike) -> Gate:
    return Gate("CP", (c, t), _norm2(angle))


def swap(a: int, b: int) -> Gate:
    return Gate("SWAP", (a, b))


def mcx(controls: Sequence[int], t: int) -> Gate:
    controls = tuple(controls)
    if not controls:
        return x(t)
    if len(controls) == 1:
        return cx(controls[0], t)
    return Gate("MCX", controls + (t,))


def mcp(controls: Sequence[int], t: int, angle: DyadicLike) -> Gate:
    controls = tuple(controls)
    if not controls:
        return p(t, angle)
    if len(controls) == 1:
        return cp(controls[0], t, angle)
    return Gate("MCP", controls + (t,), _norm2(angle))


def gms(qubits: Sequence[int], chi: Sequence[Sequence[DyadicLike]]) -> Gate:
    """Global Molmer-Sorensen gate ``exp(-i/2 sum_{i<j} chi_ij X_i X_j)``; chi in units of pi."""
    qubits = tuple(qubits)
    n = len(qubits)
    upper = tuple(_norm4(chi[i][j]) for i in range(n) for j in range(i + 1, n))
    return Gate("GMS", qubits, chi=upper)


def gms_matrix(g: Gate) -> list[list[Dyadic]]:
    n = len(g.qubits)
    m = [[_ZERO] * n for _ in range(n)]
    it = iter(g.chi)
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = next(it)
    return m


@dataclass(frozen=True)
class Register:
    name: str
    start: int
    size: int
    fmt: QFormat | None = None
    role: str = "data"  # data | ancilla | scratch

    @property
    def qubits(self) -> range:
        return range(self.start, self.start + self.size)

    def __getitem__(self, i: int) -> int:
        if not -self.size <= i < self.size:
            raise IndexError(f"{self.name}[{i}] out of range")
        return self.start + (i % self.size)


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()
    registers: tuple[Register, ...] = ()
    global_phase: Dyadic = _ZERO  # multiple of pi
    output_permutation: tuple[int, ...] | None = None  # logical -> physical

    def __post_init__(self):
        taken: set[int] = set()
        for r in self.registers:
            rq = set(r.qubits)
            if rq & taken or (r.size and r.start + r.size > self.qubit_count):
                raise RegisterError(f"register {r.name} overlaps or exceeds the circuit")
            taken |= rq
        if self.output_permutation is not None:
            perm = tuple(self.output_permutation)
            if sorted(perm) != list(range(self.qubit_count)):
                raise RegisterError("output_permutation must be a permutation of all qubits")
            if perm == tuple(range(self.qubit_count)):
                perm = None
            object.__setattr__(self, "output_permutation", perm)
        object.__setattr__(self, "global_phase", _norm2(self.global_phase))

    def register(self, name: str) -> Register:
        for r in self.registers:
            if r.name == name:
                return r
        raise RegisterError(f"no register named {name!r}")

    def has_register(self, name: str) -> bool:
        return any(r.name == name for r in self.registers)

    @property
    def scratch(self) -> tuple[int, ...]:
        return tuple(q for r in self.registers if r.role == "scratch" for q in r.qubits)

    @property
    def permutation(self) -> tuple[int, ...]:
        return self.output_permutation or tuple(range(self.qubit_count))

    def __len__(self) -> int:
        return len(self.gates)

    def with_gates(self, gates: Iterable[Gate], global_phase: DyadicLike | None = None) -> Circuit:
        return replace(
            self,
            gates=tuple(gates),
            global_phase=self.global_phase if global_phase is None else as_dyadic(global_phase),
        )


class CircuitBuilder:
    """Mutable accumulator that produces an immutable :class:`Circuit`."""

    def __init__(self):
        self.registers: list[Register] = []
        self.gates: list[Gate] = []
        self.qubit_count = 0
        self.global_phase = _ZERO

    def add_register(self, name: str, size: int, fmt: QFormat | None = None, role: str = "data") -> Register:
        if any(r.name == name for r in self.registers):
            raise RegisterError(f"duplicate register {name!r}")
        reg = Register(name, self.qubit_count, size, fmt, role)
        self.registers.append(reg)
        self.qubit_count += size
        return reg

    def append(self, g: Gate) -> None:
        self.gates.append(g)

    def extend(self, gs: Iterable[Gate]) -> None:
        self.gates.extend(gs)

    def build(self, output_permutation: Sequence[int] | None = None) -> Circuit:
        return Circuit(
            self.qubit_count,
            tuple(self.gates),
            tuple(self.registers),
            self.global_phase,
            tuple(output_permutation) if output_permutation is not None else None,
        )


# metrics -------------------------------------------------------------------


def qubit_depths(gates: Iterable[Gate], qubit_count: int) -> list[int]:
    """ASAP layering: each gate lands one step after the latest of its qubits."""
    levels = [0] * qubit_count
    for g in gates:
        qs = g.qubits
        lvl = max(levels[q] for q in qs) + 1
        for q in qs:
            levels[q] = lvl
    return levels


def depth(c: Circuit | Iterable[Gate], qubit_count: int | None = None) -> int:
    if isinstance(c, Circuit):
        qubit_count, gates = c.qubit_count, c.gates
    else:
        gates = c
    return max(qubit_depths(gates, qubit_count), default=0)


def gate_counts(c: Circuit | Iterable[Gate]) -> dict[str, int]:
    gates = c.gates if isinstance(c, Circuit) else c
    return dict(sorted(Counter(g.kind for g in gates).items()))


# inversion / composition ---------------------------------------------------


def _adjoint(g: Gate) -> Gate:
    if g.kind in _SELF_ADJOINT:
        return g
    if g.kind == "SX":
        return Gate("SXDG", g.qubits)
    if g.kind == "SXDG":
        return Gate("SX", g.qubits)
    if g.kind in _PHASE_KINDS:
        return Gate(g.kind, g.qubits, _norm2(-g.angle))
    if g.kind == "RZ":
        return Gate("RZ", g.qubits, _norm4(-g.angle))
    if g.kind == "GMS":
        return Gate("GMS", g.qubits, chi=tuple(_norm4(-c) for c in g.chi))
    raise ValueError(f"no adjoint rule for {g.kind}")


def _relabel(g: Gate, mapping: Sequence[int]) -> Gate:
    return replace(g, qubits=tuple(mapping[q] for q in g.qubits))


def inverse(c: Circuit) -> Circuit:
    """Adjoint circuit. For a permuted output the inverse consumes the logical layout."""
    gates = [_adjoint(g) for g in reversed(c.gates)]
    perm = None
    if c.output_permutation is not None:
        inv = [0] * c.qubit_count
        for logical, phys in enumerate(c.output_permutation):
            inv[phys] = logical
        gates = [_relabel(g, inv) for g in gates]
        perm = tuple(inv)
    return Circuit(c.qubit_count, tuple(gates), c.registers, -c.global_phase, perm)


def compose(c1: Circuit, c2: Circuit) -> Circuit:
    """``c1`` followed by ``c2``. ``c2`` addresses the logical qubits of ``c1``'s output."""
    if c1.qubit_count != c2.qubit_count:
        raise RegisterError(f"qubit counts differ: {c1.qubit_count} vs {c2.qubit_count}")
    if c1.registers and c2.registers and c1.registers != c2.registers:
        raise RegisterError("register layouts differ")
    p1 = c1.permutation
    gates2 = c2.gates if c1.output_permutation is None else tuple(_relabel(g, p1) for g in c2.gates)
    perm = tuple(p1[j] for j in c2.permutation)
    return Circuit(
        c1.qubit_count,
        c1.gates + gates2,
        c1.registers or c2.registers,
        c1.global_phase + c2.global_phase,
        perm,
    )


# lowering to {CX, RZ, SX} -----------------------------------------------------

_QUARTER = Dyadic(1, -2)
_HALF = Dyadic(1, -1)
_EIGHTH = Dyadic(1, -3)
_ONE = Dyadic(1)


class _Lowering:
    """Recursive rewrite into the CX/RZ/SX basis, accumulating the global phase (units of pi)."""

    def __init__(self, scratch: Sequence[int]):
        self.scratch = tuple(scratch)
        self.phase = _ZERO

    def _free_scratch(self, busy: Sequence[int]) -> list[int]:
        busy = set(busy)
        return [q for q in self.scratch if q not in busy]

    def lower(self, g: Gate) -> Iterator[Gate]:
        kind = g.kind
        q = g.qubits
        if kind == "CX" or kind == "SX":
            yield g
        elif kind == "RZ":
            if g.angle:
                yield g
        elif kind == "P":
            if g.angle:
                self.phase += g.angle * _HALF
                yield Gate("RZ", q, _norm4(g.angle))
        elif kind == "H":
            self.phase += _QUARTER
            yield Gate("RZ", q, _HALF)
            yield Gate("SX", q)
            yield Gate("RZ", q, _HALF)
        elif kind == "X":
            yield Gate("SX", q)
            yield Gate("SX", q)
        elif kind == "SXDG":
            self.phase += _HALF
            yield Gate("RZ", q, _ONE)
            yield Gate("SX", q)
            yield Gate("RZ", q, _ONE)
        elif kind == "SWAP":
            a, b = q
            yield cx(a, b)
            yield cx(b, a)
            yield cx(a, b)
        elif kind == "CP":
            yield from self._lower_cp(q[0], q[1], g.angle)
        elif kind == "MCX":
            yield from self._lower_mcx(q[:-1], q[-1], self._free_scratch(q))
        elif kind == "MCP":
            yield from self._lower_mcp(q[:-1], q[-1], g.angle)
        elif kind == "GMS":
            yield from self._lower_gms(g)
        else:
            raise ValueError(f"no lowering rule for {kind}")

    def _many(self, gates: Iterable[Gate]) -> Iterator[Gate]:
        for g in gates:
            yield from self.lower(g)

    def _lower_cp(self, c: int, t: int, a: Dyadic) -> Iterator[Gate]:
        if not a:
            return
        half = a * _HALF
        yield from self._many((p(c, half), cx(c, t), p(t, -half), cx(c, t), p(t, half)))

    def _toffoli(self, a: int, b: int, t: int) -> Iterator[Gate]:
        T, Tdg = _QUARTER, -_QUARTER
        yield from self._many((
            h(t), cx(b, t), p(t, Tdg), cx(a, t), p(t, T), cx(b, t), p(t, Tdg), cx(a, t),
            p(b, T), p(t, T), h(t), cx(a, b), p(a, T), p(b, Tdg), cx(a, b),
        ))

    def _lower_mcx(self, controls: Sequence[int], t: int, free: list[int]) -> Iterator[Gate]:
        c = len(controls)
        if c == 0:
            yield from self.lower(x(t))
            return
        if c == 1:
            yield cx(controls[0], t)
            return
        if c == 2:
            yield from self._toffoli(controls[0], controls[1], t)
            return
        if len(free) < c - 2:
            raise AncillaError(
                f"MCX with {c} controls needs {c - 2} clean scratch qubits, {len(free)} available"
            )
        anc = free[: c - 2]
        chain = [(controls[0], controls[1], anc[0])]
        for i in range(2, c - 1):
            chain.append((controls[i], anc[i - 2], anc[i - 1]))
        for step in chain:
            yield from self._toffoli(*step)
        yield from self._toffoli(controls[-1], anc[-1], t)
        for step in reversed(chain):
            yield from self._toffoli(*step)

    def _lower_mcp(self, controls: Sequence[int], t: int, a: Dyadic) -> Iterator[Gate]:
        if not a:
            return
        free = self._free_scratch(tuple(controls) + (t,))
        c = len(controls)
        if len(free) >= c - 1:
            s, rest = free[0], free[1:]
            yield from self._lower_mcx(controls, s, rest)
            yield from self._lower_cp(s, t, a)
            yield from self._lower_mcx(controls, s, rest)
        else:
            yield from self._many(gray_code_mcp(tuple(controls) + (t,), a))

    def _lower_gms(self, g: Gate) -> Iterator[Gate]:
        qs = g.qubits
        mat = gms_matrix(g)
        yield from self._many(h(q) for q in qs)
        for i in range(len(qs)):
            for j in range(i + 1, len(qs)):
                if mat[i][j]:
                    yield cx(qs[i], qs[j])
                    yield Gate("RZ", (qs[j],), mat[i][j])
                    yield cx(qs[i], qs[j])
        yield from self._many(h(q) for q in qs)


def gray_code_mcp(qubits: Sequence[int], angle: DyadicLike) -> list[Gate]:
    """Multi-controlled phase on ``qubits`` (controls + target) without ancillas.

    Uses ``prod(b) = 2**-(k-1) * sum_{S != {}} (-1)**(|S|-1) parity_S(b)``; parities
    sharing a top qubit are visited in Gray-code order so each step costs one CX.
    """
    qs = tuple(qubits)
    k = len(qs)
    theta = as_dyadic(angle).shift(-(k - 1))
    out: list[Gate] = []
    for t in range(k):
        top = qs[t]
        for i in range(1 << t):
            if i:
                j = (i & -i).bit_length() - 1
                out.append(cx(qs[j], top))
            g = i ^ (i >> 1)
            size = 1 + bin(g).count("1")
            out.append(p(top, theta if size % 2 else -theta))
        if t:
            out.append(cx(qs[t - 1], top))
    return out


def iter_lowered(c: Circuit, lowering: _Lowering | None = None) -> Iterator[Gate]:
    lw = lowering or _Lowering(c.scratch)
    for g in c.gates:
        yield from lw.lower(g)


def transpile(c: Circuit) -> Circuit:
    """Rewrite into {CX, RZ, SX}; the unitary is preserved including the tracked global phase."""
    lw = _Lowering(c.scratch)
    gates = tuple(iter_lowered(c, lw))
    return replace(c, gates=gates, global_phase=c.global_phase + lw.phase)


@dataclass
class Metrics:
    depth: int
    counts: dict[str, int] = field(default_factory=dict)
    global_phase: Dyadic = _ZERO


def lowered_metrics(c: Circuit, with_depth: bool = True) -> Metrics:
    """Depth and gate counts of ``transpile(c)`` without materialising the gate list."""
    lw = _Lowering(c.scratch)
    counts: Counter[str] = Counter()
    levels = [0] * c.qubit_count
    for g in iter_lowered(c, lw):
        counts[g.kind] += 1
        if with_depth:
            qs = g.qubits
            if len(qs) == 1:
                levels[qs[0]] += 1
            else:
                lvl = max(levels[q] for q in qs) + 1
                for q in qs:
                    levels[q] = lvl
    return Metrics(max(levels, default=0) if with_depth else 0, dict(sorted(counts.items())), c.global_phase + lw.phase)
