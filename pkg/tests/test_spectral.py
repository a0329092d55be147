import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from genpf.errors import ConvergenceError, GenPFError, NotSquare
from genpf.spectral import char_poly_root_exact, collatz_wielandt_ratio, pf_root_vector, z_matrix
from genpf.system import SYS_A, SYS_B, SYS_C, GainSystem, Selection, apply_selection

SQRT2 = math.sqrt(2)


def test_z_matrix_examples():
    assert z_matrix(SYS_C).tolist() == [[0, 2], [1, 0]]
    sq = apply_selection(SYS_B, Selection(SYS_B, (0, 2)))
    assert z_matrix(sq).tolist() == [[0, 2], [F(1, 4), 0]]
    scaled = GainSystem([[3, 0], [0, 5]], [[0, 6], [5, 0]])
    assert z_matrix(scaled).tolist() == z_matrix(SYS_C).tolist()


def test_z_matrix_errors():
    with pytest.raises(NotSquare):
        z_matrix(SYS_A)
    with pytest.raises(NotSquare):
        z_matrix(GainSystem([[1, 1], [0, 1]], [[0, 0], [1, 0]]))


def test_pf_examples():
    r = pf_root_vector([[0, 2], [1, 0]])
    assert abs(r.root - SQRT2) <= 1e-12
    np.testing.assert_allclose(r.vector, [2 / (2 + SQRT2), SQRT2 / (2 + SQRT2)], atol=1e-12)
    r = pf_root_vector([[0, 4], [1, 0]])
    assert abs(r.root - 2) <= 1e-12
    np.testing.assert_allclose(r.vector, [2 / 3, 1 / 3], atol=1e-12)
    r = pf_root_vector([[7.5]])
    assert r.root == 7.5 and r.vector.tolist() == [1.0]


def test_pf_periodic_converges():
    # a 3-cycle is periodic; the shift makes it primitive
    r = pf_root_vector([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert abs(r.root - 1) <= 1e-12


def test_pf_max_iter():
    with pytest.raises(ConvergenceError) as exc:
        pf_root_vector([[0, 1, 0], [0, 0, 1], [5, 0, 0]], max_iter=2)
    assert exc.value.best is not None


def test_collatz_wielandt_examples():
    v = pf_root_vector([[0, 2], [1, 0]]).vector
    assert abs(collatz_wielandt_ratio(SYS_C, list(v)) - SQRT2) <= 1e-12
    assert collatz_wielandt_ratio(SYS_B, [F(2), F(1, 2), F(0)]) == 1
    assert abs(collatz_wielandt_ratio(SYS_B, [4.0, 0.0, SQRT2]) - 1 / SQRT2) <= 1e-12
    with pytest.raises(ValueError):
        collatz_wielandt_ratio(SYS_C, [0, 0])


def test_char_poly_root_exact_examples():
    e = char_poly_root_exact([[0, 2], [1, 0]], precision=F(1, 10**8))
    assert e.coefficients == (1, 0, -2)
    assert F(14142135, 10**7) <= e.lower and e.upper <= F(14142136, 10**7)
    e = char_poly_root_exact([[3, 0], [0, 3]])
    assert e.coefficients == (1, -6, 9) and e.is_rational and e.lower == 3
    e = char_poly_root_exact([[0, 4], [1, 0]])
    assert e.is_rational and e.midpoint == 2
    with pytest.raises(ValueError):
        char_poly_root_exact(np.eye(5))


def test_char_poly_no_real_root():
    with pytest.raises(GenPFError):
        char_poly_root_exact([[0, -1], [1, 0]])


@st.composite
def irreducible_matrices(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    vals = draw(st.lists(st.integers(0, 9), min_size=n * n, max_size=n * n))
    z = np.array(vals, dtype=float).reshape(n, n)
    for i in range(n):
        z[i, (i + 1) % n] += 1
    return z


@given(irreducible_matrices())
def test_pf_properties(z):
    res = pf_root_vector(z)
    n = len(z)
    assert res.root > 0
    assert (res.vector > 0).all()
    assert abs(res.vector.sum() - 1) <= 1e-12
    assert res.residual <= 1e-12 * max(1.0, res.root)
    assert res.root <= n * z.max() + 1e-9
    exact = char_poly_root_exact(z, precision=F(1, 10**14))
    assert exact.contains(res.root, slack=1e-11 * res.root)


@given(irreducible_matrices(), st.integers(0, 2**32 - 1))
def test_collatz_wielandt_min_max(z, seed):
    n = len(z)
    system = GainSystem(np.eye(n).tolist(), z.tolist())
    r = pf_root_vector(z)
    x = np.random.default_rng(seed).random(n) + 0.01
    assert collatz_wielandt_ratio(system, list(x)) >= r.root * (1 - 1e-12)
    assert abs(collatz_wielandt_ratio(system, list(r.vector)) - r.root) <= 1e-10 * r.root
