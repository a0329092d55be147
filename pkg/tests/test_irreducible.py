import pytest
from hypothesis import given, settings

from genpf.errors import InvalidSystem, NotSquare
from genpf.graph import build_constraint_graph, scc
from genpf.irreducible import (
    brute_force_irreducible,
    is_irreducible_square,
    test_irreducible,
    witness_is_reducible,
)
from genpf.system import SYS_A, SYS_B, SYS_C, SYS_D, GainSystem, all_selections, apply_selection

from .strategies import block_systems


def test_square_examples():
    assert is_irreducible_square(SYS_C)
    assert not is_irreducible_square(GainSystem([[1, 0], [0, 1]], [[0, 1], [0, 0]]))
    shared = GainSystem([[1, 0], [1, 0]], [[0, 1], [0, 1]])
    assert not is_irreducible_square(shared)
    with pytest.raises(NotSquare):
        is_irreducible_square(SYS_A)


@pytest.mark.parametrize("system", [SYS_A, SYS_B, SYS_C])
def test_fixtures_irreducible(system):
    rep = test_irreducible(system)
    assert rep.irreducible and rep.witness is None
    assert rep.rounds == 1
    assert brute_force_irreducible(system).irreducible


def test_sys_a_merges_in_round_zero():
    rep = test_irreducible(SYS_A)
    assert rep.history[0].clusters == ((0,), (1,))
    assert rep.history[-1].clusters == ((0, 1),)


def test_sys_d_reducible():
    rep = test_irreducible(SYS_D)
    assert not rep.irreducible
    assert rep.witness.kind == "stuck-cluster-graph"
    assert rep.witness.selection == (1, 2)
    assert witness_is_reducible(SYS_D, rep.witness)
    slow = brute_force_irreducible(SYS_D)
    assert not slow.irreducible and slow.witness.selection == (1, 2)


def test_supporter_overlap_is_reducible():
    s = GainSystem([[1, 1, 0], [0, 1, 1]], [[0, 0, 1], [1, 0, 0]])
    rep = test_irreducible(s)
    assert not rep.irreducible and rep.witness.kind == "supporter-overlap"
    assert witness_is_reducible(s, rep.witness)


def test_empty_repressors_degenerate():
    s = GainSystem([[1, 0], [0, 1]], [[0, 1], [0, 0]])
    rep = test_irreducible(s)
    assert rep.witness.kind == "degenerate"
    single = GainSystem([[1]], [[0]])
    assert not test_irreducible(single).irreducible


def test_preconditions():
    with pytest.raises(InvalidSystem):
        test_irreducible(GainSystem([[1, 0], [0, 0]], [[0, 1], [1, 0]]))
    with pytest.raises(ValueError, match="redundant"):
        test_irreducible(GainSystem([[1, 0, 0], [0, 1, 0]], [[0, 1, 1], [1, 0, 0]]))


def test_square_path_matches_square_check():
    for s in (SYS_C, GainSystem([[1, 0], [0, 1]], [[0, 1], [1, 0]]), GainSystem([[2, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]])):
        assert test_irreducible(s).irreducible == is_irreducible_square(s)


@settings(max_examples=150)
@given(block_systems())
def test_agrees_with_brute_force(system):
    fast = test_irreducible(system)
    slow = brute_force_irreducible(system)
    assert fast.irreducible == slow.irreducible
    assert fast.rounds <= system.n - 1
    assert (fast.witness is None) == fast.irreducible
    if not fast.irreducible:
        assert witness_is_reducible(system, fast.witness)


@given(block_systems())
def test_merged_clusters_share_an_scc_in_every_hidden_graph(system):
    rep = test_irreducible(system)
    sels = list(all_selections(system))[:12]
    for part in rep.history:
        flat = sorted(v for c in part.clusters for v in c)
        assert flat == list(range(system.n))
        for sel in sels:
            if len(set(sel.choice)) != system.n:
                continue
            comp = scc(build_constraint_graph(apply_selection(system, sel))).component
            for cluster in part.clusters:
                assert len({comp[v] for v in cluster}) == 1
