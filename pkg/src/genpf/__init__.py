"""Generalized Perron-Frobenius roots and 0* vectors for nonsquare gain systems."""

__version__ = "0.1.0"

from .apps import EconomyScenario, MisoScenario, economy_to_system, miso_to_system
from .errors import GenPFError, ReducibleSystem, VerificationFailed
from .feasibility import feasible
from .irreducible import brute_force_irreducible, test_irreducible
from .oracle import enumerate_solve
from .solver import PfSolution, SolverConfig, solve, theoretical_gap
from .spectral import char_poly_root_exact, pf_root_vector
from .system import FIXTURES, GainSystem, Selection, SystemClass, classify

__all__ = [
    "EconomyScenario", "FIXTURES", "GainSystem", "GenPFError", "MisoScenario", "PfSolution",
    "ReducibleSystem", "Selection", "SolverConfig", "SystemClass", "VerificationFailed",
    "brute_force_irreducible", "char_poly_root_exact", "classify", "economy_to_system",
    "enumerate_solve", "feasible", "miso_to_system", "pf_root_vector", "solve",
    "test_irreducible", "theoretical_gap",
]
