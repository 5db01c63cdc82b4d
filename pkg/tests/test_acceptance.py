"""Acceptance criteria, each checked at its stated tolerance.

Every test records one PASS/FAIL line, repeated in the terminal summary.
"""
import itertools
import random
import time

import numpy as np
import pytest

from conftest import record_criterion
from qfa.arith import ArithSpec, build_arith, inplace_mul_const, semi_inplace_mul_const
from qfa.baseline import cuccaro_adder, ripple_multiplier
from qfa.circuit import lowered_metrics
from qfa.cli import main
from qfa.dyadic import Dyadic
from qfa.encoder import EncoderConfig
from qfa.errors import InvertibilityError
from qfa.gms import CPSequence, ascending_cp_uniform_gms, cp_sequence_circuit, gms_cost, gms_synthesis, uniform_gms_synthesis
from qfa.numfmt import QFormat, decode_value
from qfa.simulator import assert_equiv, basis_outputs, input_index, read_register, read_value, simulate_permutation

pytestmark = pytest.mark.acceptance

OPS = {"add": lambda a, b: a + b, "sub": lambda a, b: a - b, "mul": lambda a, b: a * b}
N = 32


def _check(number, passed, detail):
    record_criterion(number, passed, detail)
    assert passed, detail


def test_criterion_1_exhaustive_functional():
    t0 = time.perf_counter()
    worst = 0.0
    failures = []
    cases = 0
    for op, f in OPS.items():
        for n1, n2, m in itertools.product(range(1, 4), range(1, 4), range(1, 7)):
            c = build_arith(ArithSpec(op, (n1, n2), m))
            pairs = [(a, b) for a in range(1 << n1) for b in range(1 << n2)]
            outs = basis_outputs(c, [input_index(c, {"x": a, "y": b}) for a, b in pairs])
            for (a, b), (o, amp) in zip(pairs, outs):
                worst = max(worst, abs(1 - abs(amp)))
                cases += 1
                if read_register(c, o, "out") != f(a, b) % (1 << m):
                    failures.append((op, n1, n2, m, a, b))
    for op, f in OPS.items():
        for n in range(1, 4):
            fmt = QFormat(n, True)
            for n0 in range(n, 2 * n + 2):
                target = QFormat(n0, True)
                c = build_arith(ArithSpec(op, (fmt, fmt), target))
                lo, hi = target.mantissa_range
                vals = range(-(1 << n), 1 << n)
                pairs = list(itertools.product(vals, vals))
                mod = 1 << fmt.qubit_count
                outs = basis_outputs(c, [input_index(c, {"x": a % mod, "y": b % mod}) for a, b in pairs])
                for (a, b), (o, amp) in zip(pairs, outs):
                    worst = max(worst, abs(1 - abs(amp)))
                    cases += 1
                    got = int(read_value(c, o, "out"))
                    want = f(a, b)
                    ok = got == want if lo <= want <= hi else (got - want) % (1 << target.qubit_count) == 0
                    if not ok:
                        failures.append((op, "signed", n, n0, a, b))
    secs = time.perf_counter() - t0
    passed = not failures and worst <= 1e-9 and secs < 300
    _check(1, passed, f"{cases} cases, {len(failures)} wrong, max amplitude deviation {worst:.1e}, {secs:.0f}s")


def test_criterion_2_worked_examples():
    got = {}
    c = build_arith(ArithSpec("mul", ("s3e0", "s3e0"), "s3e0"))
    o = basis_outputs(c, [input_index(c, {"x": 13, "y": 2})])[0][0]
    got["signed"] = (read_register(c, o, "out"), int(read_value(c, o, "out")))
    for x in (7, 3):
        circ, fmt = semi_inplace_mul_const(6, QFormat(4))
        got[f"semi{x}"] = int(decode_value(basis_outputs(circ, [x])[0][0], fmt))
    r = ripple_multiplier(4, 3)
    got["ripple"] = read_register(r, simulate_permutation(r, input_index(r, {"x": 12, "y": 4})), "out")
    want = {"signed": (10, -6), "semi7": 10, "semi3": 18, "ripple": 48}
    _check(2, got == want, f"got {got}")


def test_criterion_3_inplace_const_mul():
    bad = []
    for n in range(1, 5):
        for a in range(1, 1 << n, 2):
            c = inplace_mul_const(a, n)
            outs = basis_outputs(c, range(1 << n))
            for xv, (o, amp) in enumerate(outs):
                if o != (a * xv) % (1 << n) or abs(abs(amp) - 1) > 1e-9:
                    bad.append((a, n, xv))
        for a in range(0, 1 << n, 2):
            try:
                inplace_mul_const(a, n)
                bad.append(("even accepted", a, n))
            except InvertibilityError:
                pass
    _check(3, not bad, f"odd a < 2^n for n<=4 are permutations x -> ax, even a rejected; problems: {bad[:3]}")


def test_criterion_4_gms():
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(100):
        n = rng.randint(2, 5)
        ents = []
        for _ in range(rng.randint(1, 10)):
            a, b = rng.sample(range(n), 2)
            ents.append((a, b, Dyadic(rng.randint(-1023, 1023), -rng.randint(0, 9))))
        seq = CPSequence(n, tuple(ents))
        ref = cp_sequence_circuit(seq)
        worst = max(worst, assert_equiv(gms_synthesis(seq), ref)[1], assert_equiv(uniform_gms_synthesis(seq), ref)[1])
    units = set()
    for n in range(2, 7):
        seq = CPSequence(n, tuple((0, t, Dyadic(rng.randint(1, 31), -5)) for t in range(1, n)))
        units.add(gms_cost(ascending_cp_uniform_gms(seq))["uniform_gms"])
    _check(4, worst <= 1e-9 and units == {4}, f"max deviation {worst:.1e}; uniform units per ascending sequence {sorted(units)}")


@pytest.fixture(scope="module")
def depths32():
    out = {}
    for key, cfg in {
        "pool32": EncoderConfig("ancilla_controlled", 32, True, "heuristic"),
        "pool1": EncoderConfig("ancilla_controlled", 1, True, "heuristic"),
        "reversed": EncoderConfig("ancilla_controlled", 32, True, "reversed_heuristic"),
    }.items():
        out[key] = lowered_metrics(build_arith(ArithSpec("mul", (N, N), 2 * N, cfg))).depth
    return out


def test_criterion_5_depth_ratio(depths32):
    t0 = time.perf_counter()
    sbp = lowered_metrics(build_arith(ArithSpec("mul", (N, N), 2 * N, EncoderConfig("ancilla_controlled", 32, True, "heuristic")))).depth
    ripple = lowered_metrics(ripple_multiplier(N, N)).depth
    secs = time.perf_counter() - t0
    ratio = sbp / ripple
    _check(5, ratio <= 0.35 and secs < 120, f"depth {sbp} / ripple {ripple} = {ratio:.3f} (<= 0.35), {secs:.1f}s")


def test_criterion_6_pool_speedup(depths32):
    ratio = depths32["pool1"] / depths32["pool32"]
    _check(6, ratio >= 5, f"depth pool=1 {depths32['pool1']} / pool=32 {depths32['pool32']} = {ratio:.1f} (>= 5)")


def test_criterion_7_ordering(depths32):
    ratio = depths32["reversed"] / depths32["pool32"]
    _check(7, ratio >= 3, f"depth reversed {depths32['reversed']} / heuristic {depths32['pool32']} = {ratio:.1f} (>= 3)")


def _slope(ns, ys):
    return float(np.polyfit(np.log(ns), np.log(ys), 1)[0])


def test_criterion_8_scaling():
    ns = [4, 8, 16, 32, 64]
    cfg = EncoderConfig("ancilla_controlled", 1)
    cx = {"add": [], "mul": []}
    units = {"add": [], "mul": []}
    for op in ("add", "mul"):
        for n in ns:
            c = build_arith(ArithSpec(op, (n, n), n + 1 if op == "add" else 2 * n, cfg))
            cx[op].append(lowered_metrics(c, with_depth=False).counts["CX"])
            units[op].append(gms_cost(c)["nonuniform_gms"])
    ripple = [lowered_metrics(cuccaro_adder(n), with_depth=False).counts["CX"] for n in ns]
    fits = {
        "add CX": (_slope(ns, cx["add"]), 2.0, 0.5),
        "mul CX": (_slope(ns, cx["mul"]), 3.0, 0.5),
        "add GMS": (_slope(ns, units["add"]), 1.0, 0.3),
        "mul GMS": (_slope(ns, units["mul"]), 2.0, 0.5),
        "ripple CX": (_slope(ns, ripple), 1.0, 0.2),
    }
    passed = all(abs(v - want) <= tol for v, want, tol in fits.values())
    detail = ", ".join(f"{k} {v:.2f} ({want}+-{tol})" for k, (v, want, tol) in fits.items())
    _check(8, passed, detail)


def test_criterion_9_bench_determinism(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["bench", "--suite", "fig6", "--sizes", "4,8", "--csv", str(p)]) == 0
    a, b = (p.read_bytes() for p in paths)
    _check(9, a == b and len(a) > 0, f"two bench runs, {len(a)} bytes each, identical={a == b}")
