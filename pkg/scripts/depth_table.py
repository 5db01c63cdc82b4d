"""Depth and gate-count table for SBP adders/multipliers vs the ripple baseline.

    python scripts/depth_table.py --sizes 4,8,16,32 --csv depths.csv
"""
import argparse
import sys

from qfa.bench import METHODS, rows_to_csv, run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="4,8,16,32")
    ap.add_argument("--methods", default=",".join(METHODS))
    ap.add_argument("--csv")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = run_suite(sizes, args.methods.split(","), progress=lambda r: print(".", end="", file=sys.stderr, flush=True))
    print(file=sys.stderr)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(rows_to_csv(rows))

    ripple = {(r.op, r.n1): r.depth for r in rows if r.method == "ripple"}
    print(f"{'method':15} {'op':4} {'n':>3} {'depth':>8} {'cx':>9} {'gms':>6} {'depth/ripple':>13}")
    for r in sorted(rows, key=lambda r: (r.op, r.n1, r.method)):
        rel = r.depth / ripple[(r.op, r.n1)] if (r.op, r.n1) in ripple else float("nan")
        print(f"{r.method:15} {r.op:4} {r.n1:>3} {r.depth:>8} {r.cx_count:>9} {r.gms_nonuniform:>6} {rel:>13.3f}")


if __name__ == "__main__":
    main()
