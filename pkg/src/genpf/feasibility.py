"""Feasibility oracle: is there X >= 0, sum(X) = 1 with M- X <= (1/beta) M+ X ?

The oracle solves the margin LP

    min t  s.t.  (beta*M- - M+) X <= t,  sum(X) = 1,  X >= 0

whose optimum ``t*`` is <= 0 exactly when the system is feasible for beta.
In ``"auto"`` mode the LP is solved in floats and the verdict is then
certified in exact arithmetic: a feasible verdict by checking the witness
exactly, an infeasible one by checking the dual vector u >= 0 with
u^T (beta*M- - M+) > 0.  If certification fails the LP is re-solved with
Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .simplex import linprog_eq
from .system import GainSystem, is_rational_vector, to_rational, totals

FLOAT_TOL = 1e-9
MODES = ("auto", "float", "exact")


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    witness: tuple | None
    violation: float
    mode: str

    def __bool__(self):
        return self.feasible


def _beta(beta) -> Fraction:
    b = to_rational(beta)
    if b <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return b


def _exact_rows(system: GainSystem, beta: Fraction):
    return [
        [beta * r - s for r, s in zip(rrow, srow)]
        for rrow, srow in zip(system.repressor_gains, system.supporter_gains)
    ]


def _lp(rows, exact):
    n, m = len(rows), len(rows[0])
    A = []
    for i, row in enumerate(rows):
        slack = [0] * n
        slack[i] = 1
        A.append(list(row) + [-1, 1] + slack)
    A.append([1] * m + [0, 0] + [0] * n)
    b = [0] * n + [1]
    c = [0] * m + [1, -1] + [0] * n
    return linprog_eq(c, A, b, exact=exact)


def _certify_feasible(rows, x) -> tuple | None:
    xs = [max(Fraction(v), Fraction(0)) for v in x]
    total = sum(xs)
    if total == 0:
        return None
    for row in rows:
        if sum(a * v for a, v in zip(row, xs) if v) > 0:
            return None
    return tuple(v / total for v in xs)


def _certify_infeasible(rows, duals) -> bool:
    n = len(rows)
    u = [max(-Fraction(y), Fraction(0)) for y in duals[:n]]
    if not any(u):
        return False
    m = len(rows[0])
    return all(sum(u[i] * rows[i][j] for i in range(n) if u[i]) > 0 for j in range(m))


def feasible(system: GainSystem, beta, mode: str = "auto") -> FeasibilityVerdict:
    """Decide feasibility of the system at ``beta``; witness is L1-normalised."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    b = _beta(beta)
    rows = _exact_rows(system, b)
    if mode != "exact":
        frows = [[float(v) for v in row] for row in rows]
        res = _lp(frows, exact=False)
        if res.status != "optimal":
            # the margin LP is always feasible and bounded; this is float trouble
            mode = "exact"
    if mode != "exact":
        t = float(res.value)
        m = system.m
        if mode == "float":
            if t <= FLOAT_TOL:
                x = np.clip(np.array(res.x[:m]), 0.0, None)
                return FeasibilityVerdict(True, tuple(x / x.sum()), t, "float")
            return FeasibilityVerdict(False, None, t, "float")
        if t <= 0 or abs(t) <= FLOAT_TOL:
            w = _certify_feasible(rows, res.x[:m])
            if w is not None:
                return FeasibilityVerdict(True, w, min(t, 0.0), "float-certified")
        if t > 0 and _certify_infeasible(rows, res.duals):
            return FeasibilityVerdict(False, None, t, "float-certified")
    res = _lp(rows, exact=True)
    t = res.value
    if t <= 0:
        x = res.x[: system.m]
        total = sum(x)
        return FeasibilityVerdict(True, tuple(v / total for v in x), float(t), "exact")
    return FeasibilityVerdict(False, None, float(t), "exact")


def residuals(system: GainSystem, x, beta) -> np.ndarray:
    """(1/beta) * total support - total repression, per entity."""
    support, repression = totals(system, x)
    if support.dtype == object and isinstance(beta, (int, Fraction)) and not isinstance(beta, bool):
        return support / Fraction(beta) - repression
    return np.asarray(support, dtype=float) / float(beta) - np.asarray(repression, dtype=float)
