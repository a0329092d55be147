"""Exact rational polynomials: characteristic polynomials and real-root isolation.

Polynomials are lists of Fractions, highest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list  # list[Fraction], highest degree first


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Fraction-free (Bareiss) determinant; exact for rational entries."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _trim(p: Poly) -> Poly:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def peval(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def pmul(p: Poly, q: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p, q = _trim(list(p)), _trim(list(q))
    if len(q) == 1 and q[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    if len(rem) < len(q):
        return [Fraction(0)], rem
    quot = []
    while len(rem) >= len(q):
        c = rem[0] / q[0]
        quot.append(c)
        for k in range(len(q)):
            rem[k] -= c * q[k]
        rem.pop(0)
    return quot, _trim(rem) if rem else [Fraction(0)]


def is_zero(p: Poly) -> bool:
    return all(c == 0 for c in p)


def derivative(p: Poly) -> Poly:
    d = len(p) - 1
    if d == 0:
        return [Fraction(0)]
    return [c * (d - k) for k, c in enumerate(p[:-1])]


def pgcd(p: Poly, q: Poly) -> Poly:
    a, b = _trim(list(p)), _trim(list(q))
    while not is_zero(b):
        a, b = b, pdivmod(a, b)[1]
    return [c / a[0] for c in a]


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Lagrange interpolation through the given points."""
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j != i:
                basis = pmul(basis, [Fraction(1), -Fraction(xs[j])])
                denom *= Fraction(xs[i]) - Fraction(xs[j])
        scale = Fraction(ys[i]) / denom
        for k in range(n):
            out[k] += basis[k] * scale
    return out


def char_poly(matrix: Sequence[Sequence]) -> Poly:
    """det(t*I - A) by exact evaluation at t = 0..n and interpolation."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    xs = [Fraction(t) for t in range(n + 1)]
    ys = []
    for t in xs:
        shifted = [[(t if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
        ys.append(bareiss_det(shifted))
    return interpolate(xs, ys)


def square_free(p: Poly) -> Poly:
    p = _trim(list(p))
    if len(p) <= 2:
        return p
    g = pgcd(p, derivative(p))
    return pdivmod(p, g)[0] if len(g) > 1 else p


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm sequence of the square-free part, so multiple roots count once and evaluate cleanly."""
    p = square_free(p)
    seq = [p, _trim(derivative(p))]
    while not is_zero(seq[-1]) and len(seq[-1]) > 1:
        r = pdivmod(seq[-2], seq[-1])[1]
        if is_zero(r):
            break
        seq.append([-c for c in r])
    if is_zero(seq[-1]):
        seq.pop()
    return seq


def _variations(seq: list[Poly], x) -> int:
    signs = [v for v in (peval(q, x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _variations_inf(seq: list[Poly]) -> int:
    signs = [q[0] for q in seq if q[0] != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots_above(seq: list[Poly], x) -> int:
    """Distinct real roots in (x, +inf)."""
    return _variations(seq, x) - _variations_inf(seq)


def count_roots_between(seq: list[Poly], lo, hi) -> int:
    """Distinct real roots in (lo, hi]."""
    return _variations(seq, lo) - _variations(seq, hi)


def cauchy_bound(p: Poly) -> Fraction:
    p = _trim(p)
    return 1 + max((abs(c / p[0]) for c in p[1:]), default=Fraction(0))


def isolate_largest_root(p: Poly, width) -> tuple[Fraction, Fraction] | None:
    """Interval (lo, hi] of width <= ``width`` holding the largest real root and no other root.

    Returns ``None`` when ``p`` has no real root.  A degenerate interval
    ``(r, r)`` is returned when bisection lands exactly on the root.
    """
    width = Fraction(width)
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    lo, hi = -bound, bound
    if count_roots_above(seq, lo) == 0:
        return None
    while True:
        if hi - lo <= width and count_roots_between(seq, lo, hi) == 1:
            return lo, hi
        mid = (lo + hi) / 2
        if peval(p, mid) == 0 and count_roots_above(seq, mid) == 0:
            return mid, mid
        if count_roots_above(seq, mid) >= 1:
            lo = mid
        else:
            hi = mid


def has_root_in(p: Poly, lo, hi) -> bool:
    """Whether ``p`` vanishes somewhere in [lo, hi]."""
    if len(_trim(p)) <= 1:
        return is_zero(p)
    if peval(p, lo) == 0:
        return True
    return count_roots_between(sturm_sequence(p), lo, hi) >= 1
