"""Irreducibility tests: direct square check, cluster merging, and brute force."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InvalidSystem, NotSquare
from .graph import (
    DEFAULT_BUDGET,
    ConstraintGraph,
    build_constraint_graph,
    is_strongly_connected,
    scc,
)
from .system import (
    GainSystem,
    Selection,
    SystemClass,
    all_selections,
    apply_selection,
    classify,
    redundant_affectors,
    validate,
)


@dataclass(frozen=True)
class ClusterPartition:
    round: int
    clusters: tuple[tuple[int, ...], ...]
    repressor_union: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class ReducibilityWitness:
    """Why a system is reducible.

    ``kind`` is one of ``"supporter-overlap"``, ``"degenerate"``,
    ``"stuck-cluster-graph"`` or ``"reducible-selection"``.
    """

    kind: str
    detail: str
    round: int | None = None
    clusters: tuple[tuple[int, ...], ...] | None = None
    cluster_edges: tuple[tuple[int, int], ...] | None = None
    selection: tuple[int, ...] | None = None


@dataclass(frozen=True)
class IrreducibilityReport:
    irreducible: bool
    rounds: int
    witness: ReducibilityWitness | None = None
    history: tuple[ClusterPartition, ...] = field(default=(), repr=False)
    selections_checked: int = 0

    def __bool__(self):
        return self.irreducible


def _square_shape_ok(system: GainSystem) -> bool:
    if system.m != system.n:
        return False
    if any(len(s) != 1 for s in system.supporters):
        return False
    owners = [next(iter(s)) for s in system.supporters]
    return len(set(owners)) == system.n


def is_irreducible_square(system: GainSystem) -> bool:
    """Nonsingular supporter matrix and strongly connected constraint graph."""
    if classify(system) is not SystemClass.SQUARE:
        raise NotSquare(f"system with supporter sizes {[len(s) for s in system.supporters]} is not square")
    if not _square_shape_ok(system):
        return False
    if any(not r for r in system.repressors):
        return False
    return is_strongly_connected(build_constraint_graph(system))


def hidden_system_irreducible(system: GainSystem, sel: Selection) -> bool:
    """Irreducibility of the square system picked out by a complete selection."""
    if len(set(sel.choice)) != system.n:
        return False  # two entities share a column: singular supporter matrix
    return is_irreducible_square(apply_selection(system, sel))


def _overlap(system: GainSystem):
    owner = {}
    for i, sup in enumerate(system.supporters):
        for j in sorted(sup):
            if j in owner:
                return owner[j], i, j
            owner[j] = i
    return None


def _precheck(system: GainSystem) -> ReducibilityWitness | None:
    problems = validate(system)
    if problems:
        raise InvalidSystem(problems)
    redundant = redundant_affectors(system)
    if redundant:
        raise ValueError(f"redundant affectors {redundant} must be removed before testing irreducibility")
    hit = _overlap(system)
    if hit is not None:
        a, b, j = hit
        choice = [min(s) for s in system.supporters]
        choice[a] = choice[b] = j
        return ReducibilityWitness(
            "supporter-overlap",
            f"entities {a} and {b} share supporter {j}",
            selection=tuple(choice),
        )
    empty = [i for i, r in enumerate(system.repressors) if not r]
    if empty:
        return ReducibilityWitness(
            "degenerate",
            f"entity {empty[0]} has no repressor",
            selection=tuple(min(s) for s in system.supporters),
        )
    return None


def test_irreducible(system: GainSystem) -> IrreducibilityReport:
    """Cluster-merging irreducibility test.

    Clusters start as singletons.  Each round builds a graph on clusters with
    an edge C -> C' whenever some entity of C has its whole supporter set
    inside the repressor union of C'; strongly connected clusters are merged.
    A round that merges nothing means some hidden square system is reducible.
    """
    early = _precheck(system)
    if early is not None:
        return IrreducibilityReport(False, 0, early)
    sup, rep = system.supporters, system.repressors
    clusters = [(i,) for i in range(system.n)]
    history = []
    t = 0
    while len(clusters) > 1:
        unions = tuple(frozenset().union(*(rep[k] for k in c)) for c in clusters)
        history.append(ClusterPartition(t, tuple(clusters), unions))
        edges = [
            (a, b)
            for a, ca in enumerate(clusters)
            for b in range(len(clusters))
            if a != b and any(sup[k] <= unions[b] for k in ca)
        ]
        dt = ConstraintGraph.from_edges(len(clusters), edges)
        part = scc(dt)
        if part.count == len(clusters):
            witness = _stuck_witness(system, clusters, unions, dt, t)
            return IrreducibilityReport(False, t + 1, witness, tuple(history))
        clusters = [
            tuple(sorted(v for c in group for v in clusters[c]))
            for group in part.members()
        ]
        clusters.sort(key=min)
        t += 1
    history.append(ClusterPartition(t, tuple(clusters), (frozenset().union(*rep),)))
    return IrreducibilityReport(True, t, None, tuple(history))


def _stuck_witness(system, clusters, unions, dt, t) -> ReducibilityWitness:
    """Build a reducible hidden square system from a cluster with no in-edges."""
    has_in = {j for _, j in dt.edges}
    source = next(c for c in range(len(clusters)) if c not in has_in)
    inside = set(clusters[source])
    choice = []
    for k, s in enumerate(system.supporters):
        if k in inside:
            choice.append(min(s))
        else:
            choice.append(min(s - unions[source]))
    return ReducibilityWitness(
        "stuck-cluster-graph",
        f"round {t}: cluster {list(clusters[source])} has no incoming edge and no cluster pair merges",
        round=t,
        clusters=tuple(clusters),
        cluster_edges=tuple(dt.edges),
        selection=tuple(choice),
    )


def brute_force_irreducible(system: GainSystem, budget: int = DEFAULT_BUDGET) -> IrreducibilityReport:
    """Check every hidden square system directly."""
    count = math.prod(len(s) for s in system.supporters)
    if count > budget:
        raise BudgetExceeded(count, budget)
    checked = 0
    for sel in all_selections(system):
        checked += 1
        if not hidden_system_irreducible(system, sel):
            witness = ReducibilityWitness(
                "reducible-selection",
                f"hidden square system for selection {list(sel.choice)} is reducible",
                selection=sel.choice,
            )
            return IrreducibilityReport(False, 0, witness, selections_checked=checked)
    return IrreducibilityReport(True, 0, None, selections_checked=checked)


def witness_is_reducible(system: GainSystem, witness: ReducibilityWitness) -> bool:
    """Confirm that a witness selection really induces a reducible square system."""
    if witness.selection is None:
        return False
    return not hidden_system_irreducible(system, Selection(system, witness.selection))


test_irreducible.__test__ = False
