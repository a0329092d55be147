"""Solve a seeded corpus of random irreducible instances and compare with brute-force enumeration.

    python scripts/oracle_agreement.py --count 200 --seed 20240601
"""

import argparse
import json
import time

from genpf.irreducible import brute_force_irreducible, test_irreducible
from genpf.oracle import enumerate_solve, irreducible_corpus
from genpf.solver import solve


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--out", help="write per-instance rows as JSON")
    args = ap.parse_args()

    accepted, rejected = irreducible_corpus(args.count, args.seed)
    rows = []
    t0 = time.perf_counter()
    for seed, system in accepted:
        sol = solve(system)
        orc = enumerate_solve(system)
        rel = abs(sol.beta_star - orc.best_beta) / max(1.0, orc.best_beta)
        rows.append({
            "seed": seed,
            "n": system.n,
            "m": system.m,
            "selections": orc.count,
            "beta_star": sol.beta_star,
            "oracle_beta": orc.best_beta,
            "rel_err": rel,
            "selection_ok": sol.selection.choice in orc.optimal,
            "ties": len(orc.optimal),
            "oracle_calls": sol.trace["oracle_calls"],
        })
    elapsed = time.perf_counter() - t0

    disagreements = sum(
        test_irreducible(s).irreducible != brute_force_irreducible(s).irreducible
        for _, s in accepted + rejected
    )
    worst = max(r["rel_err"] for r in rows)
    print(f"instances          {len(rows)} (rejected {len(rejected)} reducible samples)")
    print(f"max relative error {worst:.3e}")
    print(f"selection in argmin {sum(r['selection_ok'] for r in rows)}/{len(rows)}")
    print(f"instances with ties {sum(r['ties'] > 1 for r in rows)}")
    print(f"irreducibility disagreements {disagreements}/{len(accepted) + len(rejected)}")
    print(f"solve+oracle time  {elapsed:.1f}s")
    by_n = {}
    for r in rows:
        by_n.setdefault(r["n"], []).append(r["oracle_calls"])
    for n in sorted(by_n):
        calls = by_n[n]
        print(f"  n={n}: {len(calls):3d} instances, mean LP calls {sum(calls) / len(calls):.1f}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
