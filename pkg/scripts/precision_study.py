"""How small do the encoder's phases get, and what does dropping them cost?

For an n-bit adder the smallest U_G rotation is 2*pi/2**m. Pruning rotations
below ``epsilon`` radians shrinks the circuit; this reports the gate savings and
the worst success probability over all inputs (exact simulation, small n).
"""
import argparse
import math

import numpy as np

from qfa.arith import ArithSpec, build_arith
from qfa.circuit import lowered_metrics
from qfa.encoder import EncoderConfig
from qfa.simulator import input_index, read_register, simulate_batch


def worst_success(c, n):
    pairs = [(a, b) for a in range(1 << n) for b in range(1 << n)]
    amps = simulate_batch(c, [input_index(c, {"x": a, "y": b}) for a, b in pairs])
    m = c.register("out").size
    worst = 1.0
    for j, (a, b) in enumerate(pairs):
        probs = np.abs(amps[:, j]) ** 2
        good = sum(p for i, p in enumerate(probs) if p > 1e-15 and read_register(c, i, "out") == (a + b) % (1 << m))
        worst = min(worst, good)
    return worst


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    args = ap.parse_args()
    n, m = args.n, args.n + 1
    print(f"{'m':>3} {'smallest angle':>15}")
    for mm in (8, 16, 24, 32, 64):
        print(f"{mm:>3} {2 * math.pi / 2**mm:>15.3e}")
    print()
    print(f"adder n={n}, m={m}")
    print(f"{'epsilon':>9} {'rz':>6} {'cx':>6} {'worst P(correct)':>17}")
    for eps in (0.0, 0.1, 0.2, 0.4, 0.8):
        c = build_arith(ArithSpec("add", (n, n), m, EncoderConfig(angle_epsilon=eps)))
        cnt = lowered_metrics(c, with_depth=False).counts
        print(f"{eps:>9.2f} {cnt.get('RZ', 0):>6} {cnt.get('CX', 0):>6} {worst_success(c, n):>17.4f}")


if __name__ == "__main__":
    main()
