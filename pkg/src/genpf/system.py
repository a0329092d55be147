"""Gain systems: entities, affectors and the supporter/repressor gain matrices.

Entries are kept as exact ``Fraction`` values; floats supplied by the caller
are converted through their shortest decimal repr, so ``0.1`` becomes
``1/10``.  A float view is derived on demand for the numeric kernels.

All entity and affector indices are 0-based.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidSystem, UnclassifiableSystem


def to_rational(value) -> Fraction:
    """Convert an int, Fraction, float or ``"p/q"`` string to a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not gains")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r}")
    return Fraction(repr(value))


def is_rational_vector(x) -> bool:
    return all(isinstance(v, Rational) and not isinstance(v, bool) for v in x)


def _matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(tuple(to_rational(v) for v in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged gain matrix")
    return out


class SystemClass(enum.Enum):
    SQUARE = "Square"
    WEAKLY_SQUARE = "WeaklySquare"
    NONSQUARE = "Nonsquare"


@dataclass(frozen=True, eq=True)
class GainSystem:
    """A pair of n x m nonnegative gain matrices (supporters, repressors).

    Row ``i`` describes entity ``i``; column ``j`` describes affector ``j``.
    """

    supporter_gains: tuple[tuple[Fraction, ...], ...]
    repressor_gains: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        plus = _matrix(self.supporter_gains)
        minus = _matrix(self.repressor_gains)
        if len(plus) != len(minus) or (plus and len(plus[0]) != len(minus[0])):
            raise ValueError(
                f"supporter matrix is {_shape(plus)} but repressor matrix is {_shape(minus)}"
            )
        if not plus:
            raise ValueError("a system needs at least one entity")
        object.__setattr__(self, "supporter_gains", plus)
        object.__setattr__(self, "repressor_gains", minus)

    @classmethod
    def from_signed(cls, gains) -> GainSystem:
        """Split a signed gain matrix: positive entries support, negative repress."""
        g = _matrix(gains)
        plus = [[v if v > 0 else Fraction(0) for v in row] for row in g]
        minus = [[-v if v < 0 else Fraction(0) for v in row] for row in g]
        return cls(plus, minus)

    @property
    def n(self) -> int:
        return len(self.supporter_gains)

    @property
    def m(self) -> int:
        return len(self.supporter_gains[0])

    @cached_property
    def supporters(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(j for j, v in enumerate(row) if v > 0) for row in self.supporter_gains)

    @cached_property
    def repressors(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(j for j, v in enumerate(row) if v > 0) for row in self.repressor_gains)

    @cached_property
    def plus(self) -> np.ndarray:
        """Float view of the supporter matrix."""
        a = np.array([[float(v) for v in row] for row in self.supporter_gains], dtype=float)
        a.setflags(write=False)
        return a

    @cached_property
    def minus(self) -> np.ndarray:
        a = np.array([[float(v) for v in row] for row in self.repressor_gains], dtype=float)
        a.setflags(write=False)
        return a

    @cached_property
    def plus_exact(self) -> np.ndarray:
        return np.array(self.supporter_gains, dtype=object).reshape(self.n, self.m)

    @cached_property
    def minus_exact(self) -> np.ndarray:
        return np.array(self.repressor_gains, dtype=object).reshape(self.n, self.m)

    def signed(self) -> list[list[Fraction]]:
        return [
            [p - q for p, q in zip(prow, qrow)]
            for prow, qrow in zip(self.supporter_gains, self.repressor_gains)
        ]

    def selection_count(self) -> int:
        return math.prod(len(s) for s in self.supporters)

    def __repr__(self):
        return f"GainSystem(n={self.n}, m={self.m}, signed={[[str(v) for v in r] for r in self.signed()]})"


def _shape(rows):
    return f"{len(rows)}x{len(rows[0]) if rows else 0}"


def max_gain(system: GainSystem) -> Fraction:
    """Largest absolute gain over both matrices."""
    return max(max(max(row) for row in system.supporter_gains), max(max(row) for row in system.repressor_gains))


def validate(system: GainSystem) -> list[str]:
    violations = []
    for i in range(system.n):
        for j in range(system.m):
            s, r = system.supporter_gains[i][j], system.repressor_gains[i][j]
            if s < 0:
                violations.append(f"negative supporter gain at ({i},{j})")
            if r < 0:
                violations.append(f"negative repressor gain at ({i},{j})")
            if s > 0 and r > 0:
                violations.append(f"sign conflict at ({i},{j})")
    for i, sup in enumerate(system.supporters):
        if not sup:
            violations.append(f"entity {i} has no supporter")
    return violations


def empty_repressor_entities(system: GainSystem) -> list[int]:
    return [i for i, rep in enumerate(system.repressors) if not rep]


def redundant_affectors(system: GainSystem) -> list[int]:
    return [j for j in range(system.m) if all(row[j] == 0 for row in system.supporter_gains)]


def remove_redundant_affectors(system: GainSystem) -> tuple[GainSystem, list[int]]:
    """Drop affectors that support nobody; they are zero in every optimum."""
    removed = redundant_affectors(system)
    if not removed:
        return system, []
    keep = [j for j in range(system.m) if j not in set(removed)]
    if not keep:
        raise ValueError("removing redundant affectors leaves no affectors")
    return _columns(system, keep), removed


def _columns(system: GainSystem, cols: Sequence[int]) -> GainSystem:
    return GainSystem(
        [[row[j] for j in cols] for row in system.supporter_gains],
        [[row[j] for j in cols] for row in system.repressor_gains],
    )


def classify(system: GainSystem) -> SystemClass:
    n, m = system.n, system.m
    sizes = [len(s) for s in system.supporters]
    if 0 in sizes:
        raise UnclassifiableSystem(f"entity {sizes.index(0)} has no supporter")
    if m <= n and all(k == 1 for k in sizes):
        return SystemClass.SQUARE
    if m <= n + 1 and sizes.count(2) == 1 and sizes.count(1) == n - 1:
        return SystemClass.WEAKLY_SQUARE
    if m > n + 1:
        return SystemClass.NONSQUARE
    raise UnclassifiableSystem(f"unclassifiable: n={n}, m={m}, supporter set sizes {sizes}")


@dataclass(frozen=True)
class Selection:
    """A complete or partial choice of one supporter per entity.

    ``choice[i]`` is the affector picked by entity ``i``, or ``None`` when
    entity ``i`` is not determined by this (partial) selection.
    """

    system: GainSystem = field(repr=False, compare=False)
    choice: tuple[int | None, ...]

    def __post_init__(self):
        choice = tuple(None if c is None else int(c) for c in self.choice)
        if len(choice) != self.system.n:
            raise ValueError(f"selection has {len(choice)} slots for {self.system.n} entities")
        for i, c in enumerate(choice):
            if c is not None and c not in self.system.supporters[i]:
                raise ValueError(f"affector {c} is not a supporter of entity {i}")
        object.__setattr__(self, "choice", choice)

    @classmethod
    def from_mapping(cls, system: GainSystem, assignments: Mapping[int, int]) -> Selection:
        choice = [None] * system.n
        for i, j in assignments.items():
            choice[int(i)] = int(j)
        return cls(system, tuple(choice))

    @classmethod
    def empty(cls, system: GainSystem) -> Selection:
        return cls(system, (None,) * system.n)

    @property
    def assignments(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.choice) if c is not None}

    @property
    def complete(self) -> bool:
        return all(c is not None for c in self.choice)

    def extend(self, entity: int, affector: int) -> Selection:
        choice = list(self.choice)
        choice[entity] = affector
        return Selection(self.system, tuple(choice))

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Original affector index of each column of the selected system.

        Complete selections use the canonical order (column k belongs to
        entity k); partial ones keep the surviving affectors in original order.
        """
        if self.complete:
            return tuple(self.choice)
        chosen = {c for c in self.choice if c is not None}
        kept = set(chosen)
        for sup in self.system.supporters:
            if not (sup & chosen):
                kept |= sup
        return tuple(sorted(kept))


def apply_selection(system: GainSystem, sel: Selection) -> GainSystem:
    if sel.system is not system and sel.system != system:
        raise ValueError("selection was made for a different system")
    return _columns(system, sel.columns)


def natural_extension(sub_solution, sel: Selection, m: int | None = None) -> list:
    """Embed a solution of the selected system into the full affector space."""
    cols = sel.columns
    m = sel.system.m if m is None else m
    if len(sub_solution) != len(cols):
        raise ValueError(f"sub-solution has {len(sub_solution)} entries, selection has {len(cols)} columns")
    if len(set(cols)) != len(cols):
        raise ValueError("selection is not injective; natural extension is ambiguous")
    if cols and max(cols) >= m:
        raise ValueError("selection refers to affectors beyond m")
    zero = Fraction(0) if is_rational_vector(sub_solution) else 0.0
    out = [zero] * m
    for k, j in enumerate(cols):
        out[j] = sub_solution[k]
    return out


def restrict(x, sel: Selection) -> list:
    return [x[j] for j in sel.columns]


def _vector(x, m: int) -> np.ndarray:
    if len(x) != m:
        raise ValueError(f"vector has length {len(x)}, expected {m}")
    if is_rational_vector(x):
        return np.array([Fraction(v) for v in x], dtype=object)
    return np.asarray([float(v) for v in x], dtype=float)


def totals(system: GainSystem, x) -> tuple[np.ndarray, np.ndarray]:
    """Return (total support, total repression) per entity for vector ``x``.

    Rational input is computed exactly (object arrays of Fractions).
    """
    v = _vector(x, system.m)
    if v.dtype == object:
        return system.plus_exact.dot(v), system.minus_exact.dot(v)
    return system.plus @ v, system.minus @ v


def all_selections(system: GainSystem) -> Iterable[Selection]:
    for choice in itertools.product(*(sorted(s) for s in system.supporters)):
        yield Selection(system, choice)


# Named fixtures.  SYS_A: bounded-power example with a=c=1, Phi=1.
SYS_A = GainSystem(
    [[1, 1, 0, 0], [0, 0, 1, 1]],
    [[0, 0, 4, 4], [1, 1, 0, 0]],
)
# SYS_B: the log-convexity counterexample.
SYS_B = GainSystem(
    [[Fraction(1, 2), 0, 0], [0, 4, 4]],
    [[0, 2, 1], [1, 0, 0]],
)
SYS_C = GainSystem([[1, 0], [0, 1]], [[0, 2], [1, 0]])
# SYS_D: reducible; picking affector 1 for entity 0 cuts the edge 0 -> 1.
SYS_D = GainSystem.from_signed([[1, 1, -1], [-1, 0, 1]])

FIXTURES = {"SYS-A": SYS_A, "SYS-B": SYS_B, "SYS-C": SYS_C, "SYS-D": SYS_D}
