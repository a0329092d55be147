"""Classical Perron-Frobenius kernel for irreducible square systems."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, GenPFError, NotSquare
from .polyexact import char_poly, isolate_largest_root, peval
from .system import GainSystem, totals

EXACT_LIMIT = 4


@dataclass(frozen=True)
class SquarePfResult:
    root: float
    vector: np.ndarray
    iterations: int
    residual: float


@dataclass(frozen=True)
class ExactRoot:
    """Largest real root of an exact characteristic polynomial, as an isolating interval."""

    coefficients: tuple[Fraction, ...]
    lower: Fraction
    upper: Fraction

    @property
    def is_rational(self) -> bool:
        return self.lower == self.upper

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return float(self.lower) - slack <= value <= float(self.upper) + slack


def z_matrix(system: GainSystem) -> np.ndarray:
    """(M+)^-1 M- for a square system in canonical (diagonal-supporter) order.

    Returned as an object array of Fractions.
    """
    n = system.n
    if system.m != n:
        raise NotSquare(f"expected a square system, got {n}x{system.m}")
    plus = system.supporter_gains
    for i in range(n):
        for j in range(n):
            if i != j and plus[i][j] != 0:
                raise NotSquare("supporter matrix is not diagonal; apply a complete selection first")
        if plus[i][i] == 0:
            raise GenPFError(f"zero supporter gain on the diagonal at entity {i}")
    z = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            z[i, j] = system.repressor_gains[i][j] / plus[i][i]
    return z


def default_max_iter(n: int, tol: float) -> int:
    return int(math.ceil(100 * n * math.log(1.0 / tol)))


def pf_root_vector(z, tol: float = 1e-12, max_iter: int | None = None) -> SquarePfResult:
    """PF root and L1-normalised Perron vector of an irreducible nonnegative matrix.

    Power iteration on the primitive shift ``z/s + I`` where ``s`` is the
    largest row sum, so periodic matrices converge too.
    """
    a = np.asarray(np.asarray(z, dtype=object).astype(float), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"matrix of shape {a.shape} is not square")
    if (a < 0).any():
        raise ValueError("matrix has negative entries")
    n = a.shape[0]
    if max_iter is None:
        max_iter = default_max_iter(n, tol)
    scale = a.sum(axis=1).max()
    if scale == 0:
        v = np.full(n, 1.0 / n)
        return SquarePfResult(0.0, v, 0, 0.0)
    b = a / scale + np.eye(n)
    v = np.full(n, 1.0 / n)
    best = None
    for it in range(1, max_iter + 1):
        w = b @ v
        v = w / w.sum()
        av = a @ v
        r = av.sum()
        residual = float(np.abs(av - r * v).max())
        best = SquarePfResult(float(r), v, it, residual)
        if residual <= tol * max(1.0, r):
            return _polish(a, best)
    raise ConvergenceError(f"max_iter {max_iter} exceeded (residual {best.residual:.3e})", best)


def _polish(a: np.ndarray, res: SquarePfResult, steps: int = 3) -> SquarePfResult:
    """Shifted inverse iteration from a converged power-iteration estimate."""
    n = a.shape[0]
    best = res
    for _ in range(steps):
        try:
            w = np.linalg.solve(a - best.root * np.eye(n), best.vector)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(w)) or w.sum() == 0:
            break
        v = w / w.sum()
        if (v <= 0).any():
            break
        av = a @ v
        r = av.sum()
        residual = float(np.abs(av - r * v).max())
        if residual >= best.residual:
            break
        best = SquarePfResult(float(r), v, best.iterations, residual)
    return best


def collatz_wielandt_ratio(system: GainSystem, x) -> float | Fraction:
    """max_i (M- x)_i / (M+ x)_i over entities with nonzero total support."""
    support, repression = totals(system, x)
    ratios = [r / s for s, r in zip(support, repression) if s != 0]
    if not ratios:
        raise ValueError("total support is zero for every entity")
    return max(ratios)


def char_poly_root_exact(z, precision=Fraction(1, 10**12), limit: int = EXACT_LIMIT) -> ExactRoot:
    """Exact characteristic polynomial and an isolating interval for its largest real root."""
    rows = [[Fraction(v) if not isinstance(v, float) else Fraction(repr(v)) for v in row] for row in np.asarray(z, dtype=object)]
    n = len(rows)
    if n > limit:
        raise ValueError(f"degree {n} exceeds the exact-path limit {limit}")
    coeffs = char_poly(rows)
    iv = isolate_largest_root(coeffs, Fraction(precision))
    if iv is None:
        raise GenPFError("characteristic polynomial has no real root")
    lo, hi = iv
    # snap to a small-denominator rational root when there is one
    guess = ((lo + hi) / 2).limit_denominator(10**6)
    if lo <= guess <= hi and peval(coeffs, guess) == 0:
        lo = hi = guess
    return ExactRoot(tuple(coeffs), lo, hi)
