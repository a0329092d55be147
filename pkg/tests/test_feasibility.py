import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genpf.feasibility import feasible, residuals
from genpf.simplex import linprog_eq
from genpf.system import SYS_A, SYS_B, GainSystem

from .strategies import block_systems

SQRT2 = math.sqrt(2)


def test_simplex_small():
    # min -x0 - x1 s.t. x0 + x1 + s = 4, x0 + 3 x1 + t = 6
    res = linprog_eq([-1, -1, 0, 0], [[1, 1, 1, 0], [1, 3, 0, 1]], [4, 6], exact=True)
    assert res.status == "optimal" and res.value == -4


def test_simplex_infeasible_has_farkas_ray():
    A, b = [[1, 1]], [-1]
    res = linprog_eq([0, 0], A, b, exact=True)
    assert res.status == "infeasible"
    y = res.duals
    assert all(sum(y[i] * A[i][j] for i in range(1)) <= 0 for j in range(2))
    assert sum(y[i] * b[i] for i in range(1)) > 0


def test_simplex_unbounded():
    res = linprog_eq([-1, 0], [[1, -1]], [0], exact=True)
    assert res.status == "unbounded"


def test_sys_b_examples():
    v = feasible(SYS_B, 1)
    assert v.feasible and min(residuals(SYS_B, v.witness, 1)) >= 0
    assert abs(sum(v.witness) - 1) <= 1e-12
    assert feasible(SYS_B, F("1.41421356")).feasible
    assert not feasible(SYS_B, F(3, 2)).feasible


def test_sys_a_boundary_exact():
    v = feasible(SYS_A, F(1, 2), mode="exact")
    assert v.feasible and v.witness == (F(2, 3), 0, F(1, 3), 0)
    assert not feasible(SYS_A, F(1, 2) + F(1, 10**12)).feasible


def test_modes_agree():
    for beta in (F(1, 3), F(1), F(7, 5), F(3, 2)):
        verdicts = {m: feasible(SYS_B, beta, mode=m).feasible for m in ("auto", "float", "exact")}
        assert len(set(verdicts.values())) == 1


def test_bad_arguments():
    with pytest.raises(ValueError):
        feasible(SYS_B, 0)
    with pytest.raises(ValueError):
        feasible(SYS_B, 1, mode="fast")


def test_residual_examples():
    assert list(residuals(SYS_B, [F(2), F(1, 2), F(0)], 1)) == [0, 0]
    assert list(residuals(SYS_B, [0, 0, 0], 1)) == [0, 0]
    # beta = G with a vector that is not feasible there
    assert min(residuals(SYS_B, [1.0, 0.0, 0.0], 4)) < 0


@settings(max_examples=40)
@given(block_systems(max_n=3, max_m=6), st.lists(st.fractions(F(1, 20), 10, max_denominator=20), min_size=4, max_size=4))
def test_threshold_and_certified_witness(system, betas):
    betas = sorted(set(betas))
    verdicts = [feasible(system, b) for b in betas]
    flags = [v.feasible for v in verdicts]
    # feasible values form a prefix of the sorted grid
    assert flags == sorted(flags, reverse=True)
    for b, v in zip(betas, verdicts):
        if v.feasible:
            assert min(residuals(system, v.witness, b)) >= 0
            assert sum(v.witness) == 1


@settings(max_examples=30)
@given(block_systems(max_n=3, max_m=6), st.fractions(F(1, 10), 5, max_denominator=10), st.data())
def test_column_scaling_keeps_verdict(system, beta, data):
    c = [data.draw(st.fractions(F(1, 4), 4, max_denominator=4).filter(lambda v: v > 0)) for _ in range(system.m)]
    scaled = GainSystem(
        [[v * c[j] for j, v in enumerate(row)] for row in system.supporter_gains],
        [[v * c[j] for j, v in enumerate(row)] for row in system.repressor_gains],
    )
    assert feasible(system, beta).feasible == feasible(scaled, beta).feasible
