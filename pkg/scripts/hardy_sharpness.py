"""Weighted sigma_min growth across A for subcritical and supercritical nodes.

A > 1 with subcritical nodes should blow up with N; A = 1 stays bounded
(psi_0 keeps every weighted sample at 2^(1/4)); supercritical nodes escape
through the nullspace.
"""
import argparse
from pathlib import Path

from pauli_pairs.report import write_csv
from pauli_pairs.uniqueness import hardy_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--A", type=float, nargs="+", default=[0.5, 1.0, 1.25, 1.5, 2.0])
    ap.add_argument("--c", type=float, nargs="+", default=[0.2, 1.6])
    ap.add_argument("--N", type=int, nargs="+", default=[32, 64, 128])
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--out", type=Path, default=Path("out/hardy_sharpness.csv"))
    args = ap.parse_args()
    rows = []
    for c in args.c:
        rows += hardy_scan(args.A, c, args.N, threads=args.threads)
    rows = [{k: v for k, v in r.items() if k not in ("runtime_ms", "singular_values", "space_nodes_used")}
            for r in rows]
    write_csv(rows, args.out)
    for r in rows:
        print(f"c={r['c']:.2f} A={r['A']:.2f} N={r['N']:4d} sigma_min={r['sigma_min']:.3e}")


if __name__ == "__main__":
    main()
