"""Controlled-phase sequences as global Molmer-Sorensen (GMS) gates.

A CP gate is diagonal, so any sequence of them is a product of commuting
``Z_a Z_b`` rotations plus single-qubit phases:

    CP_ab(phi) = P_a(phi/2) P_b(phi/2) exp(+i phi/4 Z_a Z_b) exp(-i phi/4)

and after conjugation with H the two-qubit part is a single GMS pulse. A run
sharing one qubit (ascending sequence) can instead be built from two fan-out
gates, each of which is two *uniform* GMS pulses.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .circuit import Circuit, CircuitBuilder, Gate, cp, cx, gms, gms_matrix, h, p
from .dyadic import Dyadic, DyadicLike, as_dyadic
from .errors import SequenceError

__all__ = [
    "CPSequence",
    "GMSGate",
    "cp_sequence_to_gms",
    "cp_sequence_circuit",
    "gms_synthesis",
    "ascending_cp_uniform_gms",
    "split_ascending",
    "uniform_gms_synthesis",
    "gms_cost",
]

_ZERO = Dyadic(0)


@dataclass(frozen=True)
class CPSequence:
    n: int
    entries: tuple[tuple[int, int, Dyadic], ...] = ()

    def __post_init__(self):
        ents = []
        for a, b, phi in self.entries:
            if a == b:
                raise SequenceError(f"CP on a single qubit {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise SequenceError(f"CP({a},{b}) outside {self.n} qubits")
            ents.append((int(a), int(b), as_dyadic(phi)))
        object.__setattr__(self, "entries", tuple(ents))

    @classmethod
    def from_gates(cls, n: int, gates: Iterable[Gate]) -> CPSequence:
        ents = []
        for g in gates:
            if g.kind != "CP":
                raise SequenceError(f"{g.kind} is not a CP gate")
            ents.append((g.qubits[0], g.qubits[1], g.angle))
        return cls(n, tuple(ents))

    def __add__(self, other: CPSequence) -> CPSequence:
        return CPSequence(max(self.n, other.n), self.entries + other.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def shared_qubit(self) -> int | None:
        """A qubit touched by every entry (lowest if several), or None."""
        if not self.entries:
            return None
        common = set(self.entries[0][:2])
        for a, b, _ in self.entries[1:]:
            common &= {a, b}
        return min(common) if common else None


@dataclass(frozen=True)
class GMSGate:
    n: int
    chi: tuple[tuple[Dyadic, ...], ...]  # symmetric, zero diagonal, units of pi

    def __post_init__(self):
        for i in range(self.n):
            if self.chi[i][i]:
                raise ValueError("GMS coupling matrix needs a zero diagonal")
            for j in range(i):
                if self.chi[i][j] != self.chi[j][i]:
                    raise ValueError("GMS coupling matrix must be symmetric")

    @property
    def uniform(self) -> bool:
        off = {self.chi[i][j] for i in range(self.n) for j in range(i + 1, self.n)}
        return len(off) <= 1

    def to_gate(self, qubits: Sequence[int] | None = None) -> Gate:
        return gms(range(self.n) if qubits is None else qubits, self.chi)

    def __add__(self, other: GMSGate) -> GMSGate:
        if self.n != other.n:
            raise ValueError("size mismatch")
        return GMSGate(self.n, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.chi, other.chi)))


def cp_sequence_to_gms(seq: CPSequence) -> tuple[Dyadic, list[Dyadic], GMSGate]:
    """(global phase, per-qubit phases, coupling) with all angles in units of pi.

    The parameters are plain sums over the sequence, so they are linear in it.
    """
    n = seq.n
    omega = [_ZERO] * n
    chi = [[_ZERO] * n for _ in range(n)]
    big_omega = _ZERO
    for a, b, phi in seq.entries:
        half = phi.shift(-1)
        omega[a] += half
        omega[b] += half
        chi[a][b] -= half
        chi[b][a] -= half
        big_omega -= phi.shift(-2)
    return big_omega, omega, GMSGate(n, tuple(map(tuple, chi)))


def cp_sequence_circuit(seq: CPSequence) -> Circuit:
    b = CircuitBuilder()
    b.add_register("q", seq.n)
    b.extend(cp(a, t, phi) for a, t, phi in seq.entries)
    return b.build()


def gms_synthesis(seq: CPSequence) -> Circuit:
    """One non-uniform GMS pulse between H layers, then the single-qubit phases."""
    big_omega, omega, g = cp_sequence_to_gms(seq)
    b = CircuitBuilder()
    b.add_register("q", seq.n)
    b.extend(h(q) for q in range(seq.n))
    b.append(g.to_gate())
    b.extend(h(q) for q in range(seq.n))
    b.extend(p(q, w) for q, w in enumerate(omega) if w.mod(2))
    c = b.build()
    return c.with_gates(c.gates, global_phase=big_omega)


def _fan_out(control: int, targets: Sequence[int]) -> list[Gate]:
    return [cx(control, t) for t in targets]


def ascending_cp_uniform_gms(seq: CPSequence, control: int | None = None) -> Circuit:
    """Fan-out form of a CP run that shares one qubit.

    Layout: fan-out, P(sum phi/2) on the shared qubit and P(-phi_i/2) on each
    target, fan-out, P(phi_i/2) on each target.
    """
    c0 = seq.shared_qubit() if control is None else control
    if c0 is None or any(c0 not in (a, b) for a, b, _ in seq.entries):
        raise SequenceError("sequence is not ascending: no qubit is shared by every CP")
    angles: dict[int, Dyadic] = {}
    for a, b, phi in seq.entries:
        t = b if a == c0 else a
        angles[t] = angles.get(t, _ZERO) + phi
    targets = [t for t in angles if angles[t].mod(2)]
    total = sum((angles[t] for t in targets), _ZERO).shift(-1)
    bld = CircuitBuilder()
    bld.add_register("q", seq.n)
    if targets:
        bld.extend(_fan_out(c0, targets))
        if total.mod(2):
            bld.append(p(c0, total))
        bld.extend(p(t, -angles[t].shift(-1)) for t in targets)
        bld.extend(_fan_out(c0, targets))
        bld.extend(p(t, angles[t].shift(-1)) for t in targets)
    return bld.build()


def split_ascending(seq: CPSequence) -> list[CPSequence]:
    """Greedy split into consecutive runs that each share a qubit."""
    runs: list[list] = []
    common: set[int] = set()
    for e in seq.entries:
        pair = {e[0], e[1]}
        if runs and common & pair:
            runs[-1].append(e)
            common &= pair
        else:
            runs.append([e])
            common = pair
    return [CPSequence(seq.n, tuple(r)) for r in runs]


def uniform_gms_synthesis(seq: CPSequence) -> Circuit:
    """Any CP sequence via fan-outs: one ascending run after another."""
    gates: list[Gate] = []
    for run in split_ascending(seq):
        gates.extend(ascending_cp_uniform_gms(run).gates)
    b = CircuitBuilder()
    b.add_register("q", seq.n)
    b.extend(gates)
    return b.build()


def gms_cost(c: Circuit | Iterable[Gate]) -> dict[str, int]:
    """GMS units needed for an encoder-level circuit.

    * a run of consecutive CP gates sharing a qubit: 1 non-uniform / 4 uniform
    * a run of consecutive CX gates with the same control (fan-out): 1 / 2
    * a run of MCP gates with the same controls: the run, plus 2 MCX black boxes
    * an MCX with two or more controls: 1 black box
    * a GMS gate: 1 of its kind
    SWAPs are free (qubit relabeling) and single-qubit gates cost nothing, though
    an H on a qubit of an open CP run closes it.
    """
    gates = c.gates if isinstance(c, Circuit) else list(c)
    cost = {"uniform_gms": 0, "nonuniform_gms": 0, "mcx_blackbox": 0}
    run_kind = None  # "CP" | "CX" | "MCP"
    run_key: object = None
    run_qubits: set[int] = set()

    def close():
        nonlocal run_kind, run_key, run_qubits
        if run_kind in ("CP", "MCP"):
            cost["nonuniform_gms"] += 1
            cost["uniform_gms"] += 4
            if run_kind == "MCP":
                cost["mcx_blackbox"] += 2
        elif run_kind == "CX":
            cost["nonuniform_gms"] += 1
            cost["uniform_gms"] += 2
        run_kind, run_key, run_qubits = None, None, set()

    for g in gates:
        k = g.kind
        if k == "CP":
            pair = set(g.qubits)
            if run_kind == "CP" and run_key & pair:
                run_key = run_key & pair
            else:
                close()
                run_kind, run_key = "CP", pair
            run_qubits |= pair
        elif k == "CX":
            if not (run_kind == "CX" and run_key == g.qubits[0]):
                close()
                run_kind, run_key = "CX", g.qubits[0]
            run_qubits |= set(g.qubits)
        elif k == "MCP":
            ctrl = frozenset(g.controls)
            if not (run_kind == "MCP" and run_key == ctrl):
                close()
                run_kind, run_key = "MCP", ctrl
            run_qubits |= set(g.qubits)
        elif k in ("MCX", "GMS"):
            close()
            if k == "MCX":
                cost["mcx_blackbox"] += 1
            else:
                off = {d for i, row in enumerate(gms_matrix(g)) for d in row[i + 1 :]}
                cost["uniform_gms" if len(off) <= 1 else "nonuniform_gms"] += 1
        elif k == "SWAP":
            continue
        elif len(g.qubits) == 1 and g.qubits[0] in run_qubits:
            # diagonal phases commute with CP runs and with a fan-out's control only
            q = g.qubits[0]
            if k not in ("P", "RZ") or (run_kind == "CX" and q != run_key):
                close()
    close()
    return cost
