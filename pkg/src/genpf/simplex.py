"""Dense two-phase tableau simplex with Bland's rule.

Works over floats or Fractions: pass ``exact=True`` to pivot in exact
rational arithmetic.  Small problems only; there is no sparse handling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPResult:
    """Outcome of ``linprog_eq``.

    ``duals`` holds optimal multipliers y (A^T y <= c) when optimal, and a
    Farkas ray (A^T y <= 0, b.y > 0) when infeasible.
    """

    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list | None
    value: object
    duals: list | None
    pivots: int
    phase1_value: object = None


class _Tableau:
    def __init__(self, rows, rhs, eps):
        self.rows = rows
        self.rhs = rhs
        self.eps = eps
        self.pivots = 0

    def pivot(self, p, q, obj):
        row, rhs = self.rows, self.rhs
        piv = row[p][q]
        row[p] = [v / piv for v in row[p]]
        rhs[p] = rhs[p] / piv
        for i in range(len(row)):
            if i != p:
                f = row[i][q]
                if f != 0:
                    rp = row[p]
                    row[i] = [a - f * b for a, b in zip(row[i], rp)]
                    rhs[i] = rhs[i] - f * rhs[p]
        f = obj[0][q]
        if f != 0:
            obj[0] = [a - f * b for a, b in zip(obj[0], row[p])]
            obj[1] = obj[1] - f * rhs[p]
        self.pivots += 1


def _reduced_costs(tab, basis, cost):
    ncols = len(cost)
    d = list(cost)
    z = 0 * cost[0]
    for i, bi in enumerate(basis):
        cb = cost[bi]
        if cb != 0:
            r = tab.rows[i]
            for j in range(ncols):
                d[j] -= cb * r[j]
            z += cb * tab.rhs[i]
    return [d, -z]


def _run(tab, basis, obj, allowed, eps, max_pivots):
    """Bland's rule until optimal; returns False if unbounded."""
    while True:
        d = obj[0]
        q = next((j for j in allowed if d[j] < -eps), None)
        if q is None:
            return True
        best = None
        for i, r in enumerate(tab.rows):
            a = r[q]
            if a > eps:
                ratio = tab.rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        p = best[1]
        tab.pivot(p, q, obj)
        basis[p] = q
        if tab.pivots > max_pivots:
            raise RuntimeError("simplex pivot limit exceeded")


def linprog_eq(
    c: Sequence,
    A: Sequence[Sequence],
    b: Sequence,
    *,
    exact: bool = False,
    tol: float = 1e-9,
    max_pivots: int = 10_000,
) -> LPResult:
    """Minimise c.x subject to A x = b, x >= 0."""
    conv = Fraction if exact else float
    eps = 0 if exact else 1e-12
    feas_tol = 0 if exact else tol
    nrows, ncols = len(A), len(c)
    sign = []
    rows, rhs = [], []
    for i in range(nrows):
        s = -1 if b[i] < 0 else 1
        sign.append(s)
        art = [conv(0)] * nrows
        art[i] = conv(1)
        rows.append([conv(s * v) for v in A[i]] + art)
        rhs.append(conv(s * b[i]))
    tab = _Tableau(rows, rhs, eps)
    basis = [ncols + i for i in range(nrows)]
    total = ncols + nrows

    phase1_cost = [conv(0)] * ncols + [conv(1)] * nrows
    obj = _reduced_costs(tab, basis, phase1_cost)
    _run(tab, basis, obj, range(ncols), eps, max_pivots)
    w = -obj[1]
    if w > feas_tol:
        y = [sign[i] * (phase1_cost[ncols + i] - obj[0][ncols + i]) for i in range(nrows)]
        return LPResult("infeasible", None, None, y, tab.pivots, w)

    # drive zero-level artificials out of the basis where possible
    for i, bi in enumerate(basis):
        if bi >= ncols:
            q = next((j for j in range(ncols) if abs(tab.rows[i][j]) > eps), None)
            if q is not None:
                tab.pivot(i, q, obj)
                basis[i] = q

    cost = [conv(v) for v in c] + [conv(0)] * nrows
    obj = _reduced_costs(tab, basis, cost)
    if not _run(tab, basis, obj, range(ncols), eps, max_pivots):
        return LPResult("unbounded", None, None, None, tab.pivots, w)
    x = [conv(0)] * total
    for i, bi in enumerate(basis):
        x[bi] = tab.rhs[i]
    y = [sign[i] * (cost[ncols + i] - obj[0][ncols + i]) for i in range(nrows)]
    return LPResult("optimal", x[:ncols], -obj[1], y, tab.pivots, w)
