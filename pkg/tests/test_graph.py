import pytest
from hypothesis import given, strategies as st

from genpf.errors import BudgetExceeded
from genpf.graph import (
    ConstraintGraph,
    bfs_layers,
    build_constraint_graph,
    is_robustly_strongly_connected,
    is_strongly_connected,
    scc,
    to_dot,
)
from genpf.system import SYS_A, SYS_C, SYS_D, GainSystem, Selection, apply_selection

from .strategies import block_systems


def test_constraint_graph_fixtures():
    assert build_constraint_graph(SYS_A).edges == [(0, 1), (1, 0)]
    assert build_constraint_graph(SYS_C).edges == [(0, 1), (1, 0)]
    single = GainSystem([[1]], [[0]])
    assert build_constraint_graph(single).edges == []


def test_scc_small():
    assert scc(ConstraintGraph.from_edges(2, [(0, 1), (1, 0)])).count == 1
    part = scc(ConstraintGraph.from_edges(2, [(0, 1)]))
    assert part.count == 2 and part.component == (0, 1)
    assert part.condensation == frozenset({(0, 1)})


def test_scc_sys_d_selection():
    sq = apply_selection(SYS_D, Selection(SYS_D, (1, 2)))
    assert scc(build_constraint_graph(sq)).count == 2


def test_scc_numbering_by_lowest_vertex():
    g = ConstraintGraph.from_edges(4, [(3, 2), (2, 3), (0, 1)])
    part = scc(g)
    assert part.members() == [[0], [1], [2, 3]]


def test_bfs_layers():
    cyc2 = ConstraintGraph.from_edges(2, [(0, 1), (1, 0)])
    assert bfs_layers(cyc2, 0).layers == [[0], [1]]
    lone = ConstraintGraph.from_edges(1, [])
    assert bfs_layers(lone, 0).layers == [[0]]
    cyc3 = ConstraintGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert bfs_layers(cyc3, 1).layers == [[1], [2], [0]]
    path = ConstraintGraph.from_edges(3, [(0, 1)])
    assert bfs_layers(path, 0).unreachable == [2]
    with pytest.raises(ValueError):
        bfs_layers(path, 5)


def test_robust_connectivity():
    assert is_robustly_strongly_connected(SYS_A)
    assert not is_robustly_strongly_connected(SYS_D)
    assert is_robustly_strongly_connected(SYS_C) == is_strongly_connected(build_constraint_graph(SYS_C))
    with pytest.raises(BudgetExceeded):
        is_robustly_strongly_connected(SYS_A, budget=3)


def test_dot_export():
    dot = to_dot(build_constraint_graph(SYS_A))
    assert dot.startswith("digraph") and "e0 -> e1;" in dot


edges_st = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20))
)


def _reach(graph, v):
    seen, stack = {v}, [v]
    while stack:
        for w in graph.successors[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


@given(edges_st)
def test_scc_matches_mutual_reachability(data):
    n, edges = data
    g = ConstraintGraph.from_edges(n, edges)
    part = scc(g)
    reach = [_reach(g, v) for v in range(n)]
    for u in range(n):
        for v in range(n):
            same = v in reach[u] and u in reach[v]
            assert (part.component[u] == part.component[v]) == same
    # condensation is acyclic: a topological order exists
    cond = ConstraintGraph.from_edges(part.count, part.condensation)
    assert scc(cond).count == part.count


@given(edges_st, st.data())
def test_bfs_layers_partition_reachable(data, draw):
    n, edges = data
    g = ConstraintGraph.from_edges(n, edges)
    root = draw.draw(st.integers(0, n - 1))
    res = bfs_layers(g, root)
    flat = [v for layer in res.layers for v in layer]
    assert len(flat) == len(set(flat))
    assert set(flat) == _reach(g, root)
    assert set(flat) | set(res.unreachable) == set(range(n))


@given(block_systems(), st.data())
def test_removing_affectors_never_adds_edges(system, data):
    keep = data.draw(st.sets(st.integers(0, system.m - 1), min_size=1))
    cols = sorted(keep)
    sub = GainSystem(
        [[row[j] for j in cols] for row in system.supporter_gains],
        [[row[j] for j in cols] for row in system.repressor_gains],
    )
    assert set(build_constraint_graph(sub).edges) <= set(build_constraint_graph(system).edges)
