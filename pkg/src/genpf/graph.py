"""Constraint graphs over entities, SCC decomposition and BFS layering."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import BudgetExceeded
from .system import GainSystem, all_selections, apply_selection

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class ConstraintGraph:
    n: int
    successors: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> ConstraintGraph:
        succ = [set() for _ in range(n)]
        for i, j in edges:
            succ[i].add(j)
        return cls(n, tuple(frozenset(s) for s in succ))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in sorted(self.successors[i])]


@dataclass(frozen=True)
class SccPartition:
    component: tuple[int, ...]
    count: int
    condensation: frozenset[tuple[int, int]]

    def members(self) -> list[list[int]]:
        groups = [[] for _ in range(self.count)]
        for v, c in enumerate(self.component):
            groups[c].append(v)
        return groups


class BfsLayers(NamedTuple):
    layers: list[list[int]]
    unreachable: list[int]


def build_constraint_graph(system: GainSystem) -> ConstraintGraph:
    """Edge i -> j iff some supporter of i is a repressor of j."""
    sup, rep = system.supporters, system.repressors
    return ConstraintGraph.from_edges(
        system.n,
        ((i, j) for i in range(system.n) for j in range(system.n) if sup[i] & rep[j]),
    )


def scc(graph: ConstraintGraph) -> SccPartition:
    """Tarjan's lowlink algorithm, iterative; components numbered by their lowest vertex."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    raw = []
    counter = 0
    for root in range(graph.n):
        if root in index:
            continue
        work = [(root, iter(sorted(graph.successors[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(graph.successors[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                raw.append(comp)
    raw.sort(key=min)
    component = [0] * graph.n
    for cid, comp in enumerate(raw):
        for v in comp:
            component[v] = cid
    cond = frozenset(
        (component[i], component[j])
        for i, j in graph.edges
        if component[i] != component[j]
    )
    return SccPartition(tuple(component), len(raw), cond)


def is_strongly_connected(graph: ConstraintGraph) -> bool:
    return scc(graph).count == 1


def bfs_layers(graph: ConstraintGraph, root: int) -> BfsLayers:
    if not 0 <= root < graph.n:
        raise ValueError(f"root {root} out of range")
    dist = {root: 0}
    queue = deque([root])
    layers = [[root]]
    while queue:
        v = queue.popleft()
        for w in sorted(graph.successors[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                if dist[w] == len(layers):
                    layers.append([])
                layers[dist[w]].append(w)
                queue.append(w)
    unreachable = [v for v in range(graph.n) if v not in dist]
    return BfsLayers([sorted(layer) for layer in layers], unreachable)


def is_robustly_strongly_connected(system: GainSystem, budget: int = DEFAULT_BUDGET) -> bool:
    """Exhaustive check that every hidden square system has a strongly connected graph."""
    count = math.prod(len(s) for s in system.supporters)
    if count > budget:
        raise BudgetExceeded(count, budget)
    return all(
        is_strongly_connected(build_constraint_graph(apply_selection(system, sel)))
        for sel in all_selections(system)
    )


def to_dot(graph: ConstraintGraph, name: str = "constraints") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  e{i};" for i in range(graph.n)]
    lines += [f"  e{i} -> e{j};" for i, j in graph.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
