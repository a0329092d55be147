"""Gain systems from two applications: MISO power control and input-output economies."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ScenarioError
from .system import GainSystem, empty_repressor_entities, to_rational


@dataclass(frozen=True)
class MisoScenario:
    """Receivers, transmitters, the receiver owning each transmitter, and the path-loss exponent."""

    receivers: tuple[tuple[float, ...], ...]
    transmitters: tuple[tuple[float, ...], ...]
    owners: tuple[int, ...]
    alpha: float = 2.0

    def __post_init__(self):
        rec = tuple(tuple(float(c) for c in p) for p in self.receivers)
        tx = tuple(tuple(float(c) for c in p) for p in self.transmitters)
        owners = tuple(int(o) for o in self.owners)
        object.__setattr__(self, "receivers", rec)
        object.__setattr__(self, "transmitters", tx)
        object.__setattr__(self, "owners", owners)
        if not rec:
            raise ScenarioError("scenario has no receivers")
        if len(owners) != len(tx):
            raise ScenarioError(f"{len(tx)} transmitters but {len(owners)} owners")
        dims = {len(p) for p in rec + tx}
        if len(dims) != 1:
            raise ScenarioError(f"mixed point dimensions {sorted(dims)}")
        bad = [o for o in owners if not 0 <= o < len(rec)]
        if bad:
            raise ScenarioError(f"owner index {bad[0]} out of range")
        lonely = sorted(set(range(len(rec))) - set(owners))
        if lonely:
            raise ScenarioError(f"receiver {lonely[0]} owns no transmitter")
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ScenarioError(f"path-loss exponent must be positive, got {self.alpha}")

    @classmethod
    def from_dict(cls, d: dict) -> MisoScenario:
        return cls(d["receivers"], d["transmitters"], d["owners"], float(d.get("alpha", 2.0)))


def miso_to_system(sc: MisoScenario, max_denominator: int | None = None) -> GainSystem:
    """Entity i = receiver i, affector l = transmitter l, gain d(r_i, t_l)^-alpha.

    The gain is a supporter gain when t_l belongs to r_i and a repressor gain
    otherwise.  With ``max_denominator`` each gain is rounded to the nearest
    rational with at most that denominator.
    """
    n, m = len(sc.receivers), len(sc.transmitters)
    plus = [[Fraction(0)] * m for _ in range(n)]
    minus = [[Fraction(0)] * m for _ in range(n)]
    for i, r in enumerate(sc.receivers):
        for l, (t, owner) in enumerate(zip(sc.transmitters, sc.owners)):
            d = math.dist(r, t)
            if d == 0:
                raise ScenarioError(f"receiver {i} and transmitter {l} coincide")
            g = to_rational(d ** -sc.alpha)
            if max_denominator is not None:
                g = g.limit_denominator(max_denominator)
            if g == 0:
                raise ScenarioError(f"gain between receiver {i} and transmitter {l} underflows to zero")
            (plus if owner == i else minus)[i][l] = g
    return GainSystem(plus, minus)


@dataclass(frozen=True)
class EconomyScenario:
    """Production and requirement rates, one row per industry, one column per commodity.

    ``production[i][j]`` is how much of commodity j industry i makes per time
    unit, ``requirements[i][j]`` how much of it industry i uses up.
    """

    production: tuple[tuple[Fraction, ...], ...]
    requirements: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        prod = tuple(tuple(to_rational(v) for v in row) for row in self.production)
        req = tuple(tuple(to_rational(v) for v in row) for row in self.requirements)
        object.__setattr__(self, "production", prod)
        object.__setattr__(self, "requirements", req)
        if not prod:
            raise ScenarioError("scenario has no industries")
        shape = {len(r) for r in prod + req}
        if len(prod) != len(req) or len(shape) != 1:
            raise ScenarioError("production and requirement tables must have the same shape")
        for i, (p, q) in enumerate(zip(prod, req)):
            if any(v < 0 for v in p + q):
                raise ScenarioError(f"industry {i} has a negative rate")
            if not any(v > 0 for v in p):
                raise ScenarioError(f"industry {i} produces nothing")
            both = [j for j in range(len(p)) if p[j] > 0 and q[j] > 0]
            if both:
                raise ScenarioError(f"industry {i} both produces and consumes commodity {both[0]}")
        for j in range(len(prod[0])):
            makers = [i for i in range(len(prod)) if prod[i][j] > 0]
            if len(makers) > 1:
                raise ScenarioError(
                    f"commodity {j} is produced by industries {makers[0]} and {makers[1]}; "
                    "shared supporters make the system reducible"
                )

    @classmethod
    def from_dict(cls, d: dict) -> EconomyScenario:
        return cls(d["production"], d["requirements"])


def economy_to_system(sc: EconomyScenario) -> GainSystem:
    """Industries are entities, commodities are affectors; prices are the variables."""
    return GainSystem(sc.production, sc.requirements)


def degenerate_entities(system: GainSystem) -> list[int]:
    """Entities nobody represses.  Such systems are flagged and never solved."""
    return empty_repressor_entities(system)
