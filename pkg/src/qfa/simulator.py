"""Dense statevector / unitary oracle for small circuits.

States are held as arrays of shape ``(2,) * q + (batch,)`` so one pass can push
many basis inputs through a circuit; the axis of qubit ``i`` is ``q - 1 - i``
which makes the flat index little-endian.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .circuit import Circuit, Gate, gms_matrix
from .errors import QubitLimitError, RegisterError
from .numfmt import decode_value, encode_value

__all__ = [
    "StateVector",
    "qubit_limit",
    "simulate",
    "simulate_batch",
    "simulate_permutation",
    "is_permutation_circuit",
    "unitary_of",
    "logical_unitary",
    "assert_equiv",
    "basis_outputs",
    "input_index",
    "read_register",
    "read_value",
    "encode_inputs",
    "apply_gate",
]

DEFAULT_QUBIT_LIMIT = 24
UNITARY_LIMIT = 10
_BATCH_BUDGET = 1 << 22  # amplitudes per batch chunk
_SQ2 = 1 / math.sqrt(2)
_SX = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2
_SXDG = _SX.conj().T
_PERMUTATION_KINDS = frozenset({"X", "CX", "MCX", "SWAP"})


def qubit_limit() -> int:
    env = os.environ.get("QFA_QUBIT_LIMIT")
    return int(env) if env else DEFAULT_QUBIT_LIMIT


@dataclass
class StateVector:
    amplitudes: np.ndarray
    qubit_count: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def basis_outcome(self) -> tuple[int, complex]:
        """Most likely basis index and its amplitude."""
        i = int(np.argmax(np.abs(self.amplitudes)))
        return i, complex(self.amplitudes[i])


def _angle(g: Gate) -> float:
    return float(g.angle) * math.pi


def _idx(q: int, fixed: Mapping[int, int]) -> tuple:
    idx = [slice(None)] * (q + 1)
    for qubit, val in fixed.items():
        idx[q - 1 - qubit] = val
    return tuple(idx)


def _swap_views(a: np.ndarray, b: np.ndarray) -> None:
    tmp = a.copy()
    a[...] = b
    b[...] = tmp


def _apply_matrix(state: np.ndarray, q: int, m: np.ndarray, t: int, ctrl: Mapping[int, int]) -> None:
    a = state[_idx(q, {**ctrl, t: 0})]
    b = state[_idx(q, {**ctrl, t: 1})]
    a0 = a.copy()
    a[...] = m[0, 0] * a0 + m[0, 1] * b
    b[...] = m[1, 0] * a0 + m[1, 1] * b


def _apply_gms(state: np.ndarray, q: int, g: Gate) -> None:
    qs = g.qubits
    hmat = np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]])
    for t in qs:
        _apply_matrix(state, q, hmat, t, {})
    flat = state.reshape(1 << q, -1)
    idx = np.arange(1 << q)
    mat = gms_matrix(g)
    phase = np.zeros(1 << q)
    for i in range(len(qs)):
        zi = 1 - 2 * ((idx >> qs[i]) & 1)
        for j in range(i + 1, len(qs)):
            if mat[i][j]:
                zj = 1 - 2 * ((idx >> qs[j]) & 1)
                phase += float(mat[i][j]) * math.pi * zi * zj
    flat *= np.exp(-0.5j * phase)[:, None]
    for t in qs:
        _apply_matrix(state, q, hmat, t, {})


def apply_gate(state: np.ndarray, q: int, g: Gate) -> None:
    kind = g.kind
    qs = g.qubits
    if kind in ("X", "CX", "MCX"):
        ctrl = {c: 1 for c in qs[:-1]}
        t = qs[-1]
        _swap_views(state[_idx(q, {**ctrl, t: 0})], state[_idx(q, {**ctrl, t: 1})])
    elif kind in ("P", "CP", "MCP"):
        state[_idx(q, {c: 1 for c in qs})] *= np.exp(1j * _angle(g))
    elif kind == "RZ":
        th = _angle(g)
        state[_idx(q, {qs[0]: 0})] *= np.exp(-0.5j * th)
        state[_idx(q, {qs[0]: 1})] *= np.exp(0.5j * th)
    elif kind == "H":
        a = state[_idx(q, {qs[0]: 0})]
        b = state[_idx(q, {qs[0]: 1})]
        a0 = a.copy()
        a += b
        a *= _SQ2
        b -= a0
        b *= -_SQ2
    elif kind == "SX":
        _apply_matrix(state, q, _SX, qs[0], {})
    elif kind == "SXDG":
        _apply_matrix(state, q, _SXDG, qs[0], {})
    elif kind == "SWAP":
        a, b = qs
        _swap_views(state[_idx(q, {a: 0, b: 1})], state[_idx(q, {a: 1, b: 0})])
    elif kind == "GMS":
        _apply_gms(state, q, g)
    else:
        raise ValueError(f"simulator has no rule for {kind}")


def _check_limit(c: Circuit, limit: int | None) -> None:
    limit = qubit_limit() if limit is None else limit
    if c.qubit_count > limit:
        raise QubitLimitError(f"{c.qubit_count} qubits exceeds the simulator limit of {limit}")


def _run(c: Circuit, state: np.ndarray) -> np.ndarray:
    q = c.qubit_count
    for g in c.gates:
        apply_gate(state, q, g)
    if c.global_phase:
        state *= np.exp(1j * math.pi * float(c.global_phase))
    return state


def simulate_batch(c: Circuit, inputs: Sequence[int], limit: int | None = None) -> np.ndarray:
    """Output amplitudes for each basis input; returns shape ``(2**q, len(inputs))``."""
    _check_limit(c, limit)
    q = c.qubit_count
    dim = 1 << q
    inputs = list(inputs)
    chunk = max(1, _BATCH_BUDGET // dim)
    out = np.empty((dim, len(inputs)), dtype=complex)
    for s in range(0, len(inputs), chunk):
        part = inputs[s : s + chunk]
        state = np.zeros((dim, len(part)), dtype=complex)
        state[part, np.arange(len(part))] = 1
        state = _run(c, state.reshape((2,) * q + (len(part),)))
        out[:, s : s + len(part)] = state.reshape(dim, len(part))
    return out


def simulate(c: Circuit, input: int = 0, limit: int | None = None) -> StateVector:
    amps = simulate_batch(c, [input], limit)[:, 0]
    return StateVector(amps, c.qubit_count)


def is_permutation_circuit(c: Circuit) -> bool:
    return all(g.kind in _PERMUTATION_KINDS for g in c.gates) and not c.global_phase


def simulate_permutation(c: Circuit, input: int) -> int:
    """Bit-level evaluation of an X/CX/MCX/SWAP circuit on one basis state."""
    s = input
    for g in c.gates:
        qs = g.qubits
        if g.kind == "SWAP":
            a, b = qs
            if ((s >> a) ^ (s >> b)) & 1:
                s ^= (1 << a) | (1 << b)
        elif g.kind in _PERMUTATION_KINDS:
            if all((s >> ctl) & 1 for ctl in qs[:-1]):
                s ^= 1 << qs[-1]
        else:
            raise ValueError(f"{g.kind} is not a basis permutation")
    return s


def unitary_of(c: Circuit, limit: int = UNITARY_LIMIT) -> np.ndarray:
    """Physical unitary; column ``j`` is the output for basis input ``j``."""
    if c.qubit_count > limit:
        raise QubitLimitError(f"unitary_of is limited to {limit} qubits")
    return simulate_batch(c, range(1 << c.qubit_count), limit)


def _logical_index_map(c: Circuit) -> np.ndarray:
    idx = np.arange(1 << c.qubit_count)
    logical = np.zeros_like(idx)
    for i, phys in enumerate(c.permutation):
        logical |= ((idx >> phys) & 1) << i
    return logical


def logical_unitary(c: Circuit, limit: int = UNITARY_LIMIT) -> np.ndarray:
    u = unitary_of(c, limit)
    if c.output_permutation is None:
        return u
    out = np.empty_like(u)
    out[_logical_index_map(c), :] = u
    return out


def assert_equiv(
    c1: Circuit,
    c2: Circuit,
    tol: float = 1e-9,
    up_to_global_phase: bool = True,
    clean: Sequence[int] | None = None,
) -> tuple[bool, float]:
    """Compare logical unitaries; returns (equal, worst entry deviation).

    Only input columns with every qubit of ``clean`` in |0> are compared; by
    default these are the scratch qubits of ``c1`` and ``c2``.
    """
    if c1.qubit_count != c2.qubit_count:
        raise RegisterError(f"qubit counts differ: {c1.qubit_count} vs {c2.qubit_count}")
    u1, u2 = logical_unitary(c1), logical_unitary(c2)
    if clean is None:
        clean = sorted(set(c1.scratch) | set(c2.scratch))
    if clean:
        mask = sum(1 << q for q in clean)
        cols = [j for j in range(u1.shape[1]) if not j & mask]
        u1, u2 = u1[:, cols], u2[:, cols]
    if up_to_global_phase:
        k = np.unravel_index(np.argmax(np.abs(u1)), u1.shape)
        if abs(u2[k]) > 0:
            u1 = u1 * (u2[k] / abs(u2[k])) / (u1[k] / abs(u1[k]))
    dev = float(np.max(np.abs(u1 - u2))) if u1.size else 0.0
    return dev <= tol, dev


# register helpers ------------------------------------------------------------


def input_index(c: Circuit, values: Mapping[str, int]) -> int:
    """Basis index with each named register holding the given raw residue."""
    idx = 0
    for name, v in values.items():
        reg = c.register(name)
        if not 0 <= v < (1 << reg.size):
            raise RegisterError(f"{v} does not fit register {name} of {reg.size} qubits")
        idx |= v << reg.start
    return idx


def read_register(c: Circuit, index: int, name: str) -> int:
    reg = c.register(name)
    perm = c.permutation
    return sum(((index >> perm[reg.start + i]) & 1) << i for i in range(reg.size))


def read_value(c: Circuit, index: int, name: str):
    reg = c.register(name)
    raw = read_register(c, index, name)
    return decode_value(raw, reg.fmt) if reg.fmt is not None else raw


def encode_inputs(c: Circuit, values: Mapping[str, object]) -> int:
    """Basis index from decoded operand values, using each register's format."""
    raw = {}
    for name, v in values.items():
        reg = c.register(name)
        raw[name] = encode_value(v, reg.fmt).value if reg.fmt is not None else int(v)
    return input_index(c, raw)


def basis_outputs(c: Circuit, inputs: Iterable[int], limit: int | None = None) -> list[tuple[int, complex]]:
    """For each basis input: (most likely output index, its amplitude)."""
    inputs = list(inputs)
    if is_permutation_circuit(c):
        return [(simulate_permutation(c, s), 1.0 + 0j) for s in inputs]
    amps = simulate_batch(c, inputs, limit)
    best = np.argmax(np.abs(amps), axis=0)
    return [(int(b), complex(amps[b, j])) for j, b in enumerate(best)]
