"""Zero-density certificate over a c grid: the verdict flips at c = 1/sqrt(pi) for alpha = pi."""
import argparse
import math
from pathlib import Path

import numpy as np

from pauli_pairs.nodes import gen_power_nodes
from pauli_pairs.report import write_csv
from pauli_pairs.uniqueness import zero_density_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=math.pi)
    ap.add_argument("--count", type=int, default=4000)
    ap.add_argument("--out", type=Path, default=Path("out/certificate_flip.csv"))
    args = ap.parse_args()
    c_star = math.sqrt(args.alpha) / math.pi
    rows = []
    for c in np.linspace(0.5 * c_star, 1.5 * c_star, 20):
        cert = zero_density_certificate(gen_power_nodes(c, 0.5, args.count, symmetric=True), args.alpha)
        rows.append({"c": float(c), "density": cert["node_quadratic_density"], "bound": cert["pw_bound"],
                     "contradiction": cert["contradiction"]})
        print(f"c={c:.4f} D={cert['node_quadratic_density']:.4f} bound={cert['pw_bound']:.4f} "
              f"contradiction={cert['contradiction']}")
    print(f"predicted flip at c = {c_star:.6f}")
    write_csv(rows, args.out)


if __name__ == "__main__":
    main()
