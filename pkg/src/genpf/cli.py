"""Command-line entry point: ``genpf <command> ...``.

Exit codes: 0 success, 2 a negative verdict (reducible, infeasible,
verification failed), 1 any error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .apps import EconomyScenario, MisoScenario, degenerate_entities, economy_to_system, miso_to_system
from .errors import GenPFError, ReducibleSystem, VerificationFailed
from .feasibility import feasible
from .graph import build_constraint_graph, to_dot
from .irreducible import test_irreducible
from .oracle import enumerate_solve, irreducible_corpus
from .serialize import InstanceFormatError, dumps, encode_number, instance_to_dict, load_instance, rational_str
from .solver import SolverConfig, solve, verify_solution
from .system import GainSystem, redundant_affectors, remove_redundant_affectors, to_rational

EXIT_OK, EXIT_ERROR, EXIT_VERDICT = 0, 1, 2


class CliError(Exception):
    pass


def _report(command, args, raw: bytes | None, config: dict, mode: str, result: dict, started=None) -> dict:
    rep = {
        "command": command,
        "version": __version__,
        "input_sha256": hashlib.sha256(raw).hexdigest() if raw is not None else None,
        "config": config,
        "mode": mode,
        "result": result,
    }
    if getattr(args, "timing", False) and started is not None:
        rep["timing_s"] = round(time.perf_counter() - started, 6)
    return rep


def _emit(args, report: dict, text: str | None = None):
    if getattr(args, "format", "json") == "text" and text is not None:
        sys.stdout.write(text.rstrip("\n") + "\n")
    else:
        sys.stdout.write(dumps(report))


def _exact_number(value, interval):
    if interval is not None and interval[0] == interval[1]:
        return encode_number(value, exact=interval[0])
    return encode_number(value, interval=interval)


def _solution_payload(sol) -> dict:
    exact = sol.exact
    return {
        "beta_star": _exact_number(sol.beta_star, sol.beta_interval),
        "root": _exact_number(sol.root, (exact.lower, exact.upper) if exact else None),
        "x": [float(v) for v in sol.x],
        "selection": {"affectors": list(sol.selection.choice)},
        "residuals": [float(v) for v in sol.residuals],
        "exact_poly": [rational_str(c) for c in exact.coefficients] if exact else None,
        "bracket": [rational_str(sol.bracket[0]), rational_str(sol.bracket[1])],
        "tol": sol.tol,
        "removed_affectors": list(sol.removed_affectors),
        "gap": {
            "log2": sol.gap.log2 if sol.gap else None,
            "log2_exact": sol.gap.exact if sol.gap else None,
            "meets_theoretical_gap": sol.meets_theoretical_gap,
        },
        "verification": {k: v for k, v in sol.verification.items()},
        "warnings": sol.warnings,
    }


def _config(args) -> SolverConfig:
    return SolverConfig(
        tol=args.tol,
        lp_mode="exact" if args.exact else "auto",
        gap_mode=args.gap_mode,
    )


def cmd_solve(args) -> int:
    started = time.perf_counter()
    system, raw = load_instance(args.instance)
    cfg = _config(args)
    mode = "exact" if args.exact else "float-certified"
    try:
        sol = solve(system, cfg)
    except ReducibleSystem as exc:
        result = {"status": "reducible", "message": str(exc), "witness": _witness(exc.report.witness)}
        _emit(args, _report("solve", args, raw, cfg.as_dict(), mode, result, started), f"reducible: {exc}")
        return EXIT_VERDICT
    except VerificationFailed as exc:
        result = {"status": "verification-failed", "message": str(exc), "diagnostics": exc.diagnostics}
        _emit(args, _report("solve", args, raw, cfg.as_dict(), mode, result, started), f"verification failed: {exc}")
        return EXIT_VERDICT
    result = {"status": "ok", **_solution_payload(sol)}
    if args.trace:
        Path(args.trace).write_text(dumps(sol.trace))
    text = (
        f"beta*    {sol.beta_star!r}\n"
        f"root     {sol.root!r}\n"
        f"selection {list(sol.selection.choice)}\n"
        f"x        {[round(v, 12) for v in sol.x]}"
    )
    _emit(args, _report("solve", args, raw, cfg.as_dict(), mode, result, started), text)
    return EXIT_OK


def _witness(w):
    if w is None:
        return None
    return {
        "kind": w.kind,
        "detail": w.detail,
        "round": w.round,
        "clusters": w.clusters,
        "cluster_edges": w.cluster_edges,
        "selection": w.selection,
    }


def cmd_check_irreducible(args) -> int:
    started = time.perf_counter()
    system, raw = load_instance(args.instance)
    removed = redundant_affectors(system)
    reduced, _ = remove_redundant_affectors(system)
    rep = test_irreducible(reduced)
    witness = _witness(rep.witness)
    if witness and witness["selection"] is not None and removed:
        kept = [j for j in range(system.m) if j not in set(removed)]
        witness["selection"] = tuple(kept[c] for c in witness["selection"])
    result = {
        "irreducible": rep.irreducible,
        "rounds": rep.rounds,
        "witness": witness,
        "removed_affectors": removed,
    }
    if args.dot:
        Path(args.dot).write_text(to_dot(build_constraint_graph(system)))
    text = f"irreducible: {rep.irreducible} (rounds {rep.rounds})"
    if witness:
        text += f"\nwitness: {witness['detail']}"
    _emit(args, _report("check-irreducible", args, raw, {}, "exact", result, started), text)
    return EXIT_OK if rep.irreducible else EXIT_VERDICT


def cmd_oracle(args) -> int:
    started = time.perf_counter()
    system, raw = load_instance(args.instance)
    res = enumerate_solve(system, budget=args.budget, workers=args.workers)
    table = [
        {
            "selection": list(e.choice),
            "root": _exact_number(e.root, (e.exact.lower, e.exact.upper) if e.exact else None),
        }
        for e in res.table
    ]
    result = {
        "best_root": res.best_root,
        "best_beta": res.best_beta,
        "optimal": [list(c) for c in res.optimal],
        "count": res.count,
        "table": table,
    }
    config = {"budget": args.budget}
    text = f"best beta {res.best_beta!r} over {res.count} selections; optimal {result['optimal']}"
    _emit(args, _report("oracle", args, raw, config, "exact" if res.exact else "float", result, started), text)
    return EXIT_OK


def cmd_feasible(args) -> int:
    started = time.perf_counter()
    system, raw = load_instance(args.instance)
    beta = to_rational(args.beta)
    v = feasible(system, beta, mode="exact" if args.exact else "auto")
    witness = None
    if v.witness is not None:
        witness = [encode_number(w, exact=w if isinstance(w, Fraction) else None) for w in v.witness]
    result = {"feasible": v.feasible, "beta": rational_str(beta), "witness": witness, "violation": v.violation}
    text = f"{'feasible' if v.feasible else 'infeasible'} at beta = {args.beta}"
    _emit(args, _report("feasible", args, raw, {"beta": args.beta}, v.mode, result, started), text)
    return EXIT_OK if v.feasible else EXIT_VERDICT


def cmd_gen(args) -> int:
    started = time.perf_counter()
    raw = None
    config = {"kind": args.kind}
    if args.kind == "random":
        if args.seed is None:
            raise CliError("gen random needs --seed")
        (sample_seed, system), = irreducible_corpus(1, args.seed)[0]
        config["seed"] = args.seed
        config["sample_seed"] = sample_seed
    else:
        if not args.spec:
            raise CliError(f"gen {args.kind} needs --spec")
        raw = Path(args.spec).read_bytes()
        try:
            spec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"malformed JSON in {args.spec}: {exc}") from exc
        try:
            if args.kind == "power-control":
                system = miso_to_system(MisoScenario.from_dict(spec), args.max_denominator)
                config["max_denominator"] = args.max_denominator
            else:
                system = economy_to_system(EconomyScenario.from_dict(spec))
        except (KeyError, TypeError) as exc:
            raise InstanceFormatError(f"scenario is missing or mistypes field {exc}") from exc
    inst = instance_to_dict(system)
    if args.output:
        Path(args.output).write_text(dumps(inst))
    degenerate = degenerate_entities(system)
    result = {"n": system.n, "m": system.m, "degenerate_entities": degenerate, "output": args.output}
    if not args.output:
        result["instance"] = inst
    text = f"{args.kind}: n={system.n} m={system.m}" + (f", degenerate entities {degenerate}" if degenerate else "")
    _emit(args, _report("gen", args, raw, config, "exact", result, started), text)
    return EXIT_OK


def _load_solution(path) -> dict:
    try:
        d = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"malformed JSON in {path}: {exc}") from exc
    if isinstance(d, dict) and "result" in d:
        d = d["result"]
    if not isinstance(d, dict) or "x" not in d or "beta_star" not in d:
        raise InstanceFormatError("solution needs 'x' and 'beta_star'")
    return d


def verify_payload(system: GainSystem, sol: dict, mode: str = "exact") -> dict:
    beta = sol["beta_star"]
    beta = float(beta["decimal"] if isinstance(beta, dict) else beta)
    x = [float(v) for v in sol["x"]]
    if len(x) != system.m:
        raise InstanceFormatError(f"dimension mismatch: solution has {len(x)} entries, instance has m={system.m}")
    eps = 10 * float(sol.get("tol", SolverConfig().tol))
    checks = verify_solution(system, beta, x, eps, mode=mode)
    claimed = sol.get("residuals")
    if claimed is not None:
        recomputed = np.asarray(x)
        support = system.plus @ recomputed
        res = support / beta - system.minus @ recomputed
        checks["residuals_match"] = bool(np.allclose(res, np.asarray(claimed, dtype=float), rtol=1e-9, atol=1e-12))
        checks["ok"] = checks["ok"] and checks["residuals_match"]
    return checks


def cmd_verify(args) -> int:
    started = time.perf_counter()
    system, raw = load_instance(args.instance)
    sol = _load_solution(args.solution)
    checks = verify_payload(system, sol)
    result = {"pass": checks["ok"], "checks": checks}
    text = "pass" if checks["ok"] else "FAIL: " + ", ".join(k for k, v in checks.items() if v is False)
    _emit(args, _report("verify", args, raw, {}, "exact", result, started), text)
    return EXIT_OK if checks["ok"] else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    p = argparse.ArgumentParser(prog="genpf", description="Generalized Perron-Frobenius roots of gain systems.")
    p.add_argument("--version", action="version", version=f"genpf {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="compute beta*, the PF root and a 0* vector")
    s.add_argument("instance")
    s.add_argument("--tol", type=float, default=SolverConfig().tol)
    s.add_argument("--exact", action="store_true", help="exact rational LPs throughout")
    s.add_argument("--gap-mode", choices=("practical", "theoretical"), default="practical")
    s.add_argument("--trace", metavar="PATH", help="write the search trace as JSON")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check-irreducible", parents=[common], help="cluster-merging irreducibility test")
    c.add_argument("instance")
    c.add_argument("--dot", metavar="PATH", help="write the constraint graph in DOT format")
    c.set_defaults(func=cmd_check_irreducible)

    o = sub.add_parser("oracle", parents=[common], help="enumerate every complete selection")
    o.add_argument("instance")
    o.add_argument("--budget", type=int, default=10**6)
    o.add_argument("--workers", type=int, default=1)
    o.set_defaults(func=cmd_oracle)

    f = sub.add_parser("feasible", parents=[common], help="feasibility oracle at a given beta")
    f.add_argument("instance")
    f.add_argument("--beta", required=True, help="rational 'p/q' or decimal")
    f.add_argument("--exact", action="store_true")
    f.set_defaults(func=cmd_feasible)

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("kind", choices=("power-control", "economy", "random"))
    g.add_argument("--spec", metavar="PATH", help="scenario JSON")
    g.add_argument("-o", "--output", metavar="PATH")
    g.add_argument("--seed", type=int)
    g.add_argument("--max-denominator", type=int, default=None, help="round gains to rationals")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", parents=[common], help="re-check a solution against its instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GenPFError, CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: cannot read or write {exc.filename}: {exc.strerror}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
