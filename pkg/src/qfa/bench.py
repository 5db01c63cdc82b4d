"""Construction-only benchmarks: SBP circuits against the ripple baseline."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import astuple, dataclass, fields
from typing import Callable, Iterable, Sequence

from .arith import ArithSpec, build_arith
from .baseline import cuccaro_adder, ripple_multiplier
from .circuit import Circuit, lowered_metrics
from .encoder import EncoderConfig
from .gms import gms_cost

__all__ = ["BenchRow", "METHODS", "OPS", "method_config", "build_circuit", "bench_point", "run_suite", "rows_to_csv"]

METHODS = ("ripple", "sbp-ancilla-1", "sbp-ancilla-n", "sbp-naive")
OPS = ("add", "mul")


@dataclass(frozen=True)
class BenchRow:
    method: str
    op: str
    n1: int
    n2: int
    m: int
    ancillas: int
    depth: int
    cx_count: int
    rz_count: int
    sx_count: int
    gms_uniform: int
    gms_nonuniform: int
    build_millis: str = ""  # empty unless timing was requested

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def method_config(method: str, n: int) -> EncoderConfig | None:
    if method == "sbp-naive":
        return EncoderConfig()
    if method == "sbp-ancilla-1":
        return EncoderConfig("ancilla_controlled", 1, True, "heuristic")
    if method == "sbp-ancilla-n":
        return EncoderConfig("ancilla_controlled", n, True, "heuristic")
    if method == "ripple":
        return None
    raise ValueError(f"unknown method {method!r}")


def build_circuit(method: str, op: str, n: int) -> tuple[Circuit, int]:
    """The benchmark circuit and its result width."""
    if method == "ripple":
        if op == "add":
            return cuccaro_adder(n, "plain"), n + 1
        return ripple_multiplier(n, n), 2 * n
    m = n + 1 if op == "add" else 2 * n
    return build_arith(ArithSpec(op, (n, n), m, method_config(method, n))), m


def bench_point(method: str, op: str, n: int, timing: bool = False) -> BenchRow:
    t0 = time.perf_counter()
    c, m = build_circuit(method, op, n)
    met = lowered_metrics(c)
    millis = f"{(time.perf_counter() - t0) * 1000:.0f}" if timing else ""
    g = gms_cost(c)
    anc = sum(r.size for r in c.registers if r.role != "data")
    cnt = met.counts
    return BenchRow(
        method, op, n, n, m, anc, met.depth,
        cnt.get("CX", 0), cnt.get("RZ", 0), cnt.get("SX", 0),
        g["uniform_gms"], g["nonuniform_gms"], millis,
    )


def run_suite(
    sizes: Iterable[int],
    methods: Sequence[str] = METHODS,
    ops: Sequence[str] = OPS,
    timing: bool = False,
    progress: Callable[[BenchRow], None] | None = None,
) -> list[BenchRow]:
    rows = []
    for n in sizes:
        for method in methods:
            for op in ops:
                row = bench_point(method, op, n, timing)
                rows.append(row)
                if progress:
                    progress(row)
    return sorted(rows, key=lambda r: (r.method, r.op, r.n1))


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BenchRow.header())
    for r in rows:
        w.writerow(astuple(r))
    return buf.getvalue()
