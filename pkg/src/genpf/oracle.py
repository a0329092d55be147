"""Brute-force ground truth over all complete selections, plus random instances."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, GenPFError
from .graph import DEFAULT_BUDGET
from .irreducible import hidden_system_irreducible, test_irreducible
from .polyexact import has_root_in, isolate_largest_root, pgcd
from .spectral import EXACT_LIMIT, ExactRoot, char_poly_root_exact, pf_root_vector, z_matrix
from .system import GainSystem, Selection, all_selections, apply_selection

TIE_RTOL = 1e-9


class ReducibleSelection(GenPFError):
    pass


@dataclass(frozen=True)
class SelectionRoot:
    choice: tuple[int, ...]
    root: float
    exact: ExactRoot | None


@dataclass(frozen=True)
class OracleResult:
    best_root: float
    best_beta: float
    optimal: tuple[tuple[int, ...], ...]
    table: tuple[SelectionRoot, ...]
    count: int
    exact: bool


def _solve_one(args):
    system, choice, exact = args
    sel = Selection(system, choice)
    if not hidden_system_irreducible(system, sel):
        raise ReducibleSelection(f"selection {list(choice)} gives a reducible square system")
    z = z_matrix(apply_selection(system, sel))
    root = pf_root_vector(z).root
    ex = char_poly_root_exact(z, precision=Fraction(1, 10**15)) if exact else None
    if ex is not None:
        root = float(ex.midpoint)
    return SelectionRoot(choice, root, ex)


def _refine(root: ExactRoot) -> ExactRoot:
    if root.is_rational:
        return root
    width = (root.upper - root.lower) / 4
    lo, hi = isolate_largest_root(list(root.coefficients), width)
    return ExactRoot(root.coefficients, lo, hi)


def compare_roots(a: ExactRoot, b: ExactRoot) -> int:
    """Exact three-way comparison of two isolated largest roots."""
    g = pgcd(list(a.coefficients), list(b.coefficients))
    lo, hi = max(a.lower, b.lower), min(a.upper, b.upper)
    if len(g) > 1 and lo <= hi and has_root_in(g, lo, hi):
        # a common factor vanishes on the overlap, which each interval isolates
        return 0
    while not (a.upper < b.lower or b.upper < a.lower):
        a, b = _refine(a), _refine(b)
    return -1 if a.upper < b.lower else 1


def _ties(best: SelectionRoot, other: SelectionRoot) -> bool:
    if best.exact is not None and other.exact is not None:
        return compare_roots(best.exact, other.exact) == 0
    return abs(other.root - best.root) <= TIE_RTOL * max(1.0, best.root)


def enumerate_solve(system: GainSystem, budget: int = DEFAULT_BUDGET, workers: int = 1, exact: bool | None = None) -> OracleResult:
    """Minimum PF root over every hidden square system."""
    count = math.prod(len(s) for s in system.supporters)
    if count > budget:
        raise BudgetExceeded(count, budget)
    if exact is None:
        exact = system.n <= EXACT_LIMIT
    jobs = [(system, sel.choice, exact) for sel in all_selections(system)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            table = list(pool.map(_solve_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        table = [_solve_one(j) for j in jobs]
    best = min(table, key=lambda e: e.root)
    if exact:
        # float order can only be wrong among near-ties; settle those exactly
        for e in table:
            if e is not best and abs(e.root - best.root) <= 1e-6 * max(1.0, best.root):
                if compare_roots(e.exact, best.exact) < 0:
                    best = e
    optimal = tuple(e.choice for e in table if e is best or _ties(best, e))
    return OracleResult(best.root, 1.0 / best.root, optimal, tuple(table), count, exact)


def random_system(
    rng: np.random.Generator,
    n: int,
    sizes,
    density: float = 0.6,
    gain_max: int = 9,
) -> GainSystem:
    """Disjoint supporter blocks of the given sizes; other entries repress with prob ``density``."""
    m = sum(sizes)
    owner = [i for i, k in enumerate(sizes) for _ in range(k)]
    perm = rng.permutation(m)
    owner = [owner[p] for p in perm]
    plus = [[0] * m for _ in range(n)]
    minus = [[0] * m for _ in range(n)]
    for j, i in enumerate(owner):
        plus[i][j] = int(rng.integers(1, gain_max + 1))
        for k in range(n):
            if k != i and rng.random() < density:
                minus[k][j] = int(rng.integers(1, gain_max + 1))
    return GainSystem(plus, minus)


def random_instance(seed: int, max_m: int = 9, gain_max: int = 9) -> GainSystem:
    """One random (not necessarily irreducible) instance: n in {2,3,4}, |S_i| in {1,2,3}."""
    rng = np.random.default_rng(seed)
    while True:
        n = int(rng.integers(2, 5))
        sizes = [int(k) for k in rng.integers(1, 4, size=n)]
        if sum(sizes) <= max_m:
            break
    density = float(rng.uniform(0.3, 0.9))
    return random_system(rng, n, sizes, density, gain_max)


def irreducible_corpus(count: int, seed: int = 0, max_m: int = 9) -> tuple[list[tuple[int, GainSystem]], list[tuple[int, GainSystem]]]:
    """Rejection-sample ``count`` irreducible instances.

    Returns ``(accepted, rejected)`` as lists of ``(seed, system)`` so every
    instance can be rebuilt from its recorded seed.
    """
    accepted, rejected = [], []
    s = seed
    while len(accepted) < count:
        system = random_instance(s, max_m)
        (accepted if test_irreducible(system).irreducible else rejected).append((s, system))
        s += 1
    return accepted, rejected
