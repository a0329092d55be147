import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from genpf import solver as solver_mod
from genpf.errors import ReducibleSystem, VerificationFailed
from genpf.oracle import enumerate_solve
from genpf.solver import (
    SolverConfig,
    binary_search_beta,
    eliminate_affectors,
    solve,
    theoretical_gap,
    verify_solution,
)
from genpf.system import SYS_A, SYS_B, SYS_C, SYS_D, GainSystem

from .strategies import irreducible_systems

SQRT2 = math.sqrt(2)


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(tol=0)
    with pytest.raises(ValueError):
        SolverConfig(retries=0)
    with pytest.raises(ValueError):
        SolverConfig(gap_mode="loose")
    with pytest.raises(ValueError):
        SolverConfig(tie_break="random")


def test_binary_search_examples():
    cfg = SolverConfig(tol=1e-9)
    b = binary_search_beta(SYS_A, cfg)
    assert F(1, 2) - F(1, 10**9) <= b.beta_minus <= F(1, 2) < b.beta_plus
    b = binary_search_beta(SYS_B, cfg)
    assert abs(float(b.beta_minus) - SQRT2) <= 1e-9 * SQRT2
    b = binary_search_beta(SYS_C, cfg)
    assert abs(float(b.beta_minus) - 1 / SQRT2) <= 1e-9
    assert b.beta_plus - b.beta_minus <= F(1, 10**9)


def test_eliminate_examples():
    assert eliminate_affectors(SYS_A, F(1, 2) - F(1, 10**12)).choice == (0, 2)
    assert eliminate_affectors(SYS_B, F(SQRT2) - F(1, 10**12)).choice == (0, 2)
    assert eliminate_affectors(SYS_C, F(7, 10)).choice == (0, 1)


def test_solve_sys_a():
    sol = solve(SYS_A)
    assert sol.beta_star == 0.5 and sol.root == 2.0
    assert sol.x == pytest.approx((2 / 3, 0, 1 / 3, 0), abs=1e-12)
    assert max(abs(r) for r in sol.residuals) <= 1e-12
    assert sol.beta_interval == (F(1, 2), F(1, 2))


def test_solve_sys_b():
    sol = solve(SYS_B)
    assert abs(sol.beta_star - SQRT2) <= 1e-12
    assert sol.x == pytest.approx((0.7388, 0, 0.2612), abs=1e-4)
    assert sol.x[2] == pytest.approx(sol.x[0] / (2 * SQRT2), rel=1e-12)
    lo, hi = sol.beta_interval
    assert lo <= F(SQRT2) * (1 + F(1, 10**14)) and hi >= F(SQRT2) * (1 - F(1, 10**14))


def test_solve_sys_c():
    sol = solve(SYS_C)
    assert abs(sol.beta_star - 1 / SQRT2) <= 1e-12
    assert sol.x == pytest.approx((2 / (2 + SQRT2), SQRT2 / (2 + SQRT2)), abs=1e-12)


def test_solve_reducible():
    with pytest.raises(ReducibleSystem) as exc:
        solve(SYS_D)
    assert exc.value.report.witness.selection == (1, 2)


def test_solve_strips_redundant_affectors():
    extra = GainSystem(
        [list(r) + [0] for r in SYS_A.supporter_gains],
        [list(r) + [3] for r in SYS_A.repressor_gains],
    )
    sol = solve(extra)
    assert sol.removed_affectors == [4]
    assert sol.beta_star == 0.5 and sol.x[4] == 0 and len(sol.x) == 5


def test_verification_failure(monkeypatch):
    def broken(*args, **kwargs):
        return {"ok": False, "sr_equality": False}

    monkeypatch.setattr(solver_mod, "verify_solution", broken)
    with pytest.raises(VerificationFailed) as exc:
        solve(SYS_C, SolverConfig(retries=2))
    assert exc.value.best is not None
    assert len(exc.value.best.trace["attempts"]) == 2


def test_verify_solution_rejects_wrong_beta():
    sol = solve(SYS_B)
    assert verify_solution(SYS_B, sol.beta_star, sol.x, 1e-11)["ok"]
    bad = verify_solution(SYS_B, sol.beta_star * 0.9, sol.x, 1e-11)
    assert not bad["ok"] and not bad["infeasible_above"]
    weak = verify_solution(SYS_A, 0.5, [1 / 3, 1 / 3, 1 / 6, 1 / 6], 1e-11)
    assert weak["sr_equality"] and not weak["zero_star_structure"]


def test_theoretical_gap_examples():
    assert theoretical_gap(2, 4).log2 == -192
    g = theoretical_gap(1, 1)
    assert g.log2 == 0 and g.dyadic_floor() == 1
    assert theoretical_gap(3, 9).log2 == pytest.approx(-216 * math.log2(27), rel=1e-15)
    assert theoretical_gap(3, 9).dyadic_floor() <= F(2) ** -1027
    with pytest.raises(ValueError):
        theoretical_gap(0, 2)


def test_theoretical_gap_mode():
    sol = solve(SYS_C, SolverConfig(gap_mode="theoretical"))
    assert sol.meets_theoretical_gap is True and sol.warnings == []
    assert abs(sol.beta_star - 1 / SQRT2) <= 1e-12


def test_practical_gap_warning():
    sol = solve(SYS_B)
    assert sol.meets_theoretical_gap is False
    assert "worst-case root gap" in sol.warnings[0]


def test_deterministic():
    a, b = solve(SYS_B), solve(SYS_B)
    assert a.x == b.x and a.beta_star == b.beta_star and a.trace == b.trace


@settings(max_examples=25)
@given(irreducible_systems(max_n=3, max_m=7))
def test_matches_oracle(system):
    sol = solve(system)
    oracle = enumerate_solve(system)
    assert abs(sol.beta_star - oracle.best_beta) <= 1e-9 * max(1.0, oracle.best_beta)
    assert sol.selection.choice in oracle.optimal
    assert sol.verification["ok"]
