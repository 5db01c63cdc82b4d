"""Command line: ``qfa synth|simulate|bench|export-qasm``.

Exit codes: 0 success, 2 usage error, 3 domain error.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Sequence

from . import qasm
from .arith import ArithSpec, build_arith, build_poly_eval, inplace_mul_const
from .baseline import cuccaro_adder, ripple_multiplier
from .bench import METHODS, rows_to_csv, run_suite
from .circuit import Circuit
from .encoder import EncoderConfig, encode_sbp, qft
from .errors import QfaError
from .numfmt import QFormat, dyadic_to_decimal
from .sbpoly import SBPolynomial
from .simulator import basis_outputs, encode_inputs, read_value

EXIT_USAGE = 2
EXIT_DOMAIN = 3

_STRATEGY = {"naive": "naive_mcp", "ancilla": "ancilla_controlled"}


def _encoder_config(args) -> EncoderConfig:
    strategy = _STRATEGY[args.strategy]
    pool = args.ancillas if args.ancillas is not None else (1 if strategy == "ancilla_controlled" else 0)
    return EncoderConfig(strategy, pool, args.swapless, args.ordering)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_synth(args) -> int:
    cfg = _encoder_config(args)
    fx, fy = QFormat.parse(args.fmt_x), QFormat.parse(args.fmt_y)
    target = QFormat.parse(args.fmt_out) if args.fmt_out else None
    if args.poly:
        if target is None:
            raise QfaError("--poly needs --fmt-out")
        c = build_poly_eval(args.poly, {"x": fx, "y": fy}, target, cfg)
    else:
        c = build_arith(ArithSpec(args.op, (fx, fy), target, cfg))
    _write(qasm.emit(c), args.out)
    return 0


_ASSIGN_RE = re.compile(r"\s*(\w+)\s*=\s*(\S+)\s*")


def _parse_input(c: Circuit, text: str) -> int:
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        return int(text)
    values = {}
    for part in text.split(","):
        m = _ASSIGN_RE.fullmatch(part)
        if not m:
            raise QfaError(f"bad input {part!r}; expected name=value")
        values[m.group(1)] = m.group(2)
    return encode_inputs(c, values)


def cmd_simulate(args) -> int:
    c = qasm.parse(Path(args.qasm).read_text())
    idx = _parse_input(c, args.input)
    out, amp = basis_outputs(c, [idx])[0]
    if abs(abs(amp) - 1) > 1e-9:
        print(f"warning: output is not a basis state (|amplitude| = {abs(amp):.6f})", file=sys.stderr)
    name = args.register
    if c.has_register(name):
        v = read_value(c, out, name)
        print(dyadic_to_decimal(v) if not isinstance(v, int) else v)
    else:
        print(out)
    return 0


def cmd_bench(args) -> int:
    if args.suite != "fig6":
        raise QfaError(f"unknown suite {args.suite!r}")
    sizes = [int(s) for s in args.sizes.split(",") if s]
    methods = args.methods.split(",") if args.methods else METHODS
    progress = (lambda r: print(f"{r.method} {r.op} n={r.n1} depth={r.depth}", file=sys.stderr)) if args.verbose else None
    rows = run_suite(sizes, methods, timing=args.timing, progress=progress)
    _write(rows_to_csv(rows), args.csv)
    return 0


def builtin_circuit(name: str) -> Circuit:
    """Named circuits: qft-M, qft-swapless-M, sbp-example, cuccaro-N, ripple-N1xN2, mulconst-A-N."""
    if m := re.fullmatch(r"qft-(\d+)", name):
        return qft(int(m.group(1)))
    if m := re.fullmatch(r"qft-swapless-(\d+)", name):
        return qft(int(m.group(1)), swapless=True)
    if name == "sbp-example":
        p = SBPolynomial.parse("x[0] + 2*x[1]*x[2] + 3*x[0]*x[1]")
        return encode_sbp(p, 3, domain={"x": 3})
    if m := re.fullmatch(r"cuccaro-(\d+)", name):
        return cuccaro_adder(int(m.group(1)))
    if m := re.fullmatch(r"ripple-(\d+)x(\d+)", name):
        return ripple_multiplier(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"mulconst-(-?\d+)-(\d+)", name):
        return inplace_mul_const(int(m.group(1)), int(m.group(2)))
    raise QfaError(f"unknown builtin circuit {name!r}; see `qfa export-qasm --help`")


def cmd_export(args) -> int:
    _write(qasm.emit(builtin_circuit(args.name)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qfa", description="SBP quantum arithmetic synthesis")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="synthesize an arithmetic circuit to QASM")
    s.add_argument("--op", choices=("add", "sub", "mul"), default="add")
    s.add_argument("--poly", help="polynomial in x and y, e.g. 'x**2 + y' (overrides --op)")
    s.add_argument("--fmt-x", required=True, help="operand format, e.g. u4e0 or s3e-1")
    s.add_argument("--fmt-y", required=True)
    s.add_argument("--fmt-out", help="target format (default: overflow-free)")
    s.add_argument("--strategy", choices=tuple(_STRATEGY), default="naive")
    s.add_argument("--ancillas", type=int)
    s.add_argument("--ordering", choices=("as_given", "heuristic", "reversed_heuristic"), default="as_given")
    s.add_argument("--swapless", action="store_true")
    s.add_argument("--out", help="output file (default stdout)")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("simulate", help="run a QASM circuit on one basis input")
    s.add_argument("--qasm", required=True)
    s.add_argument("--input", default="0", help="basis index or name=value pairs, e.g. x=7,y=3")
    s.add_argument("--register", default="out", help="register to decode (default out)")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("bench", help="depth and gate-count table")
    s.add_argument("--suite", default="fig6")
    s.add_argument("--sizes", default="4,8,16,32")
    s.add_argument("--methods", help=f"comma list from {','.join(METHODS)}")
    s.add_argument("--csv", help="output file (default stdout)")
    s.add_argument("--timing", action="store_true", help="fill build_millis (makes output nondeterministic)")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("export-qasm", help="dump a builtin circuit", description=builtin_circuit.__doc__)
    s.add_argument("name")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (QfaError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


run = main

if __name__ == "__main__":
    sys.exit(main())
