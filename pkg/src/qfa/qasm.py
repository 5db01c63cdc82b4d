"""OpenQASM 2 export and import.

Metadata that QASM has no syntax for (register formats and roles, the global
phase, the output permutation, GMS gates) rides along in ``// @`` comments, so
files stay loadable by standard tools while round-tripping through ``parse``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .circuit import Circuit, Gate, Register, _Lowering, cp, cx, gms, h, mcx, p, rz, swap, sx, sxdg, x
from .dyadic import Dyadic, as_dyadic
from .errors import UnsupportedGateError
from .numfmt import QFormat

__all__ = ["emit", "parse", "format_angle", "parse_angle"]

_SIMPLE = {"H": "h", "X": "x", "SX": "sx", "SXDG": "sxdg", "CX": "cx", "SWAP": "swap"}
_ANGLED = {"P": "p", "RZ": "rz", "CP": "cp"}


def format_angle(a: Dyadic) -> str:
    """Angle in units of pi as QASM text: ``0``, ``pi``, ``-3*pi/4``."""
    f = a.to_fraction()
    if f == 0:
        return "0"
    sign = "-" if f < 0 else ""
    num, den = abs(f.numerator), f.denominator
    s = "pi" if num == 1 else f"{num}*pi"
    if den != 1:
        s += f"/{den}"
    return sign + s


_ANGLE_RE = re.compile(r"(-)?(?:(\d+)\*)?pi(?:/(\d+))?")


def parse_angle(text: str) -> Dyadic:
    t = text.replace(" ", "")
    if t in ("0", "-0"):
        return Dyadic(0)
    m = _ANGLE_RE.fullmatch(t)
    if not m:
        raise ValueError(f"cannot read angle {text!r}; expected a dyadic multiple of pi")
    f = Fraction(int(m.group(2) or 1), int(m.group(3) or 1))
    return as_dyadic(-f if m.group(1) else f)


def _layout(c: Circuit) -> tuple[list[Register], list[str]]:
    regs = list(c.registers)
    covered = sum(r.size for r in regs)
    if not regs or covered != c.qubit_count:
        regs = [Register("q", 0, c.qubit_count)] if c.qubit_count else []
    names = [""] * c.qubit_count
    for r in regs:
        for i, q in enumerate(r.qubits):
            names[q] = f"{r.name}[{i}]"
    return regs, names


def _gate_line(g: Gate, names: list[str]) -> str:
    args = ",".join(names[q] for q in g.qubits)
    if g.kind in _SIMPLE:
        return f"{_SIMPLE[g.kind]} {args};"
    if g.kind in _ANGLED:
        return f"{_ANGLED[g.kind]}({format_angle(g.angle)}) {args};"
    if g.kind == "MCX" and len(g.qubits) == 3:
        return f"ccx {args};"
    raise UnsupportedGateError(g.kind)


def emit(c: Circuit, lower_unsupported: bool = True) -> str:
    """QASM text. Gates without a qelib1 equivalent (MCX with 3+ controls, MCP)
    are lowered to CX/RZ/SX unless ``lower_unsupported`` is False, in which case
    they raise :class:`UnsupportedGateError`."""
    regs, names = _layout(c)
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    for r in regs:
        fmt = str(r.fmt) if r.fmt is not None else "-"
        lines.append(f"// @register {r.name} fmt={fmt} role={r.role}")
        lines.append(f"qreg {r.name}[{r.size}];")
    lw = _Lowering(c.scratch)
    body: list[str] = []
    for g in c.gates:
        if g.kind == "GMS":
            dec = list(_Lowering(())._lower_gms(g))
            qs = ",".join(str(q) for q in g.qubits)
            chi = ",".join(str(v) for v in g.chi)
            body.append(f"// @gms lines={len(dec)} qubits={qs} chi={chi}")
            body.extend(_gate_line(d, names) for d in dec)
            continue
        try:
            body.append(_gate_line(g, names))
        except UnsupportedGateError:
            if not lower_unsupported:
                raise UnsupportedGateError(
                    f"{g.kind} on {len(g.qubits)} qubits has no QASM 2 form; transpile first"
                ) from None
            body.extend(_gate_line(d, names) for d in lw.lower(g))
    phase = c.global_phase + lw.phase
    if phase:
        lines.append(f"// @global_phase {phase}")
    if c.output_permutation is not None:
        lines.append("// @output_permutation " + ",".join(map(str, c.output_permutation)))
    return "\n".join(lines + body) + "\n"


_QREG_RE = re.compile(r"qreg\s+(\w+)\[(\d+)\];")
_META_RE = re.compile(r"//\s*@register\s+(\w+)\s+fmt=(\S+)\s+role=(\w+)")
_GATE_RE = re.compile(r"(\w+)(?:\(([^)]*)\))?\s+([^;]+);")
_ARG_RE = re.compile(r"(\w+)\[(\d+)\]")


def parse(text: str) -> Circuit:
    meta: dict[str, tuple[QFormat | None, str]] = {}
    regs: list[Register] = []
    offsets: dict[str, int] = {}
    gates: list[Gate] = []
    phase = Dyadic(0)
    perm = None
    skip = 0
    nq = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("//"):
            if m := _META_RE.match(line):
                fmt = None if m.group(2) == "-" else QFormat.parse(m.group(2))
                meta[m.group(1)] = (fmt, m.group(3))
            elif line.startswith("// @global_phase"):
                phase = as_dyadic(line.split()[-1])
            elif line.startswith("// @output_permutation"):
                perm = tuple(int(v) for v in line.split()[-1].split(","))
            elif line.startswith("// @gms"):
                fields = dict(kv.split("=", 1) for kv in line.split()[2:])
                qs = [int(v) for v in fields["qubits"].split(",")]
                upper = iter(as_dyadic(v) for v in fields["chi"].split(","))
                n = len(qs)
                chi = [[Dyadic(0)] * n for _ in range(n)]
                for i in range(n):
                    for j in range(i + 1, n):
                        chi[i][j] = chi[j][i] = next(upper)
                gates.append(gms(qs, chi))
                skip = int(fields["lines"])
            continue
        if line.startswith(("OPENQASM", "include")):
            continue
        if m := _QREG_RE.match(line):
            name, size = m.group(1), int(m.group(2))
            fmt, role = meta.get(name, (None, "data"))
            regs.append(Register(name, nq, size, fmt, role))
            offsets[name] = nq
            nq += size
            continue
        if skip:
            skip -= 1
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise ValueError(f"cannot parse QASM line {raw!r}")
        name, param = m.group(1), m.group(2)
        qs = [offsets[r] + int(i) for r, i in _ARG_RE.findall(m.group(3))]
        gates.append(_make(name, param, qs))
    return Circuit(nq, tuple(gates), tuple(regs), phase, perm)


def _make(name: str, param: str | None, qs: list[int]) -> Gate:
    simple = {"h": h, "x": x, "sx": sx, "sxdg": sxdg}
    if name in simple:
        return simple[name](qs[0])
    if name == "cx":
        return cx(*qs)
    if name == "swap":
        return swap(*qs)
    if name == "ccx":
        return mcx(qs[:2], qs[2])
    if name in ("p", "u1"):
        return p(qs[0], parse_angle(param))
    if name == "rz":
        return rz(qs[0], parse_angle(param))
    if name in ("cp", "cu1"):
        return cp(qs[0], qs[1], parse_angle(param))
    raise UnsupportedGateError(f"unsupported QASM gate {name!r}")
