"""Depth of an n-bit unsigned multiplier across monomial orderings and ancilla pool sizes.

    python scripts/ordering_ablation.py --n 16 --pools 1,2,4,8,16
"""
import argparse

from qfa.arith import ArithSpec, build_arith
from qfa.circuit import lowered_metrics
from qfa.encoder import EncoderConfig


def depth(n, pool, ordering, swapless=True):
    cfg = EncoderConfig("ancilla_controlled", pool, swapless, ordering)
    return lowered_metrics(build_arith(ArithSpec("mul", (n, n), 2 * n, cfg))).depth


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--pools", default="1,2,4,8,16")
    args = ap.parse_args()
    orderings = ("heuristic", "as_given", "reversed_heuristic")
    print(f"n={args.n}  transpiled depth")
    print(f"{'pool':>5} " + " ".join(f"{o:>19}" for o in orderings))
    for pool in (int(p) for p in args.pools.split(",")):
        ds = [depth(args.n, pool, o) for o in orderings]
        print(f"{pool:>5} " + " ".join(f"{d:>19}" for d in ds))
    with_swaps = depth(args.n, max(int(p) for p in args.pools.split(",")), "heuristic", swapless=False)
    print(f"heuristic, largest pool, with QFT swaps: {with_swaps}")


if __name__ == "__main__":
    main()
