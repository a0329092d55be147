"""Random MISO layout: receivers with several candidate transmitters each.

Prints the max-min SIR threshold and which transmitter each receiver keeps.
"""

import argparse

import numpy as np

from genpf.apps import MisoScenario, miso_to_system
from genpf.oracle import enumerate_solve
from genpf.solver import solve


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--receivers", type=int, default=3)
    ap.add_argument("--per-receiver", type=int, default=2)
    ap.add_argument("--alpha", type=float, default=3.0)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    rec = rng.uniform(0, 100, size=(args.receivers, 2))
    tx, owners = [], []
    for i, r in enumerate(rec):
        for _ in range(args.per_receiver):
            tx.append(r + rng.normal(0, 8, size=2))
            owners.append(i)
    sc = MisoScenario(rec.tolist(), [t.tolist() for t in tx], owners, args.alpha)
    system = miso_to_system(sc, max_denominator=10**9)
    sol = solve(system)
    orc = enumerate_solve(system)
    print(f"max-min SIR beta* = {sol.beta_star:.6g}  (oracle {orc.best_beta:.6g} over {orc.count} assignments)")
    for i, j in enumerate(sol.selection.choice):
        d = np.linalg.norm(np.array(tx[j]) - rec[i])
        print(f"receiver {i}: transmitter {j} at distance {d:5.1f}, power share {sol.x[j]:.4f}")
    print(f"active transmitters: {sum(v > 0 for v in sol.x)} of {len(tx)}")


if __name__ == "__main__":
    main()
