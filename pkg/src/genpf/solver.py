"""Generalized PF root and 0*-vector of an irreducible nonsquare system.

Phase 1 brackets beta* by doubling and bisection against the feasibility
oracle.  Phase 2 fixes one supporter per entity (ascending entity order,
lowest feasible affector first) while the contracted system stays feasible
at the lower bracket end.  The resulting square system is solved by the
classical PF kernel and the answer is verified; a failed verification halves
the bracket width and retries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InvalidSystem, NoExtendingSupporter, ReducibleSystem, VerificationFailed
from .feasibility import feasible, residuals
from .irreducible import test_irreducible
from .spectral import EXACT_LIMIT, ExactRoot, char_poly_root_exact, pf_root_vector, z_matrix
from .system import (
    GainSystem,
    Selection,
    apply_selection,
    max_gain,
    natural_extension,
    remove_redundant_affectors,
    to_rational,
    totals,
    validate,
)

GAP_MODES = ("practical", "theoretical")
TIE_BREAKS = ("lowest-index",)
SR_EQUALITY_TOL = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    gap_mode: str = "practical"
    tol: float = 1e-12
    retries: int = 4
    exact_verify: bool = True
    tie_break: str = "lowest-index"
    lp_mode: str = "auto"
    pf_tol: float = 1e-12
    max_doublings: int = 256

    def __post_init__(self):
        if self.gap_mode not in GAP_MODES:
            raise ValueError(f"gap_mode must be one of {GAP_MODES}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.retries < 1:
            raise ValueError("retries must be >= 1")
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"tie_break must be one of {TIE_BREAKS}")

    def as_dict(self) -> dict:
        return {
            "gap_mode": self.gap_mode,
            "tol": self.tol,
            "retries": self.retries,
            "exact_verify": self.exact_verify,
            "tie_break": self.tie_break,
            "lp_mode": self.lp_mode,
            "pf_tol": self.pf_tol,
        }


@dataclass(frozen=True)
class GapBound:
    """The worst-case gap (nG)^(-8 n^3), kept in log2 form."""

    n: int
    max_gain: Fraction

    @property
    def exponent(self) -> int:
        return -8 * self.n**3

    @property
    def base(self) -> Fraction:
        return self.n * Fraction(self.max_gain)

    @property
    def exact(self) -> bool:
        b = self.base
        return _is_pow2(b.numerator) and _is_pow2(b.denominator)

    @property
    def log2(self) -> int | float:
        b = self.base
        if self.exact:
            return self.exponent * (b.numerator.bit_length() - b.denominator.bit_length())
        return self.exponent * (math.log2(b.numerator) - math.log2(b.denominator))

    def dyadic_floor(self) -> Fraction:
        """A power of two no larger than the gap."""
        k = math.floor(self.log2) if self.exact else math.floor(self.log2) - 1
        return Fraction(2) ** k

    def met_by(self, width) -> bool:
        width = Fraction(width)
        if width <= 0:
            return True
        return math.log2(width.numerator) - math.log2(width.denominator) <= self.log2


def _is_pow2(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def theoretical_gap(n: int, G) -> GapBound:
    G = to_rational(G)
    if n < 1 or G < 1:
        raise ValueError("theoretical gap needs n >= 1 and G >= 1")
    return GapBound(n, G)


@dataclass
class SearchBracket:
    beta_minus: Fraction
    beta_plus: Fraction
    trace: list = field(default_factory=list)
    oracle_calls: int = 0


@dataclass
class PfSolution:
    beta_star: float
    root: float
    x: tuple[float, ...]
    selection: Selection
    residuals: tuple[float, ...]
    exact: ExactRoot | None
    bracket: tuple[Fraction, Fraction]
    tol: float
    gap: GapBound | None
    removed_affectors: list[int]
    verification: dict
    trace: dict = field(default_factory=dict, repr=False)

    @property
    def beta_interval(self) -> tuple[Fraction, Fraction] | None:
        if self.exact is None or self.exact.lower <= 0:
            return None
        return 1 / self.exact.upper, 1 / self.exact.lower

    @property
    def meets_theoretical_gap(self) -> bool | None:
        if self.gap is None:
            return None
        return self.gap.met_by(self.bracket[1] - self.bracket[0])

    @property
    def warnings(self) -> list[str]:
        out = []
        if self.meets_theoretical_gap is False:
            width = self.bracket[1] - self.bracket[0]
            log_w = math.log2(width.numerator) - math.log2(width.denominator)
            out.append(
                f"practical bracket width 2^{log_w:.2f} exceeds the worst-case root gap "
                f"2^{float(self.gap.log2):.2f}; distinct hidden roots closer than the bracket are not excluded"
            )
        return out


def _width_target(cfg: SolverConfig, tol: float, system: GainSystem, beta_minus: Fraction) -> Fraction:
    if cfg.gap_mode == "theoretical":
        return theoretical_gap(system.n, max(max_gain(system), Fraction(1))).dyadic_floor()
    return Fraction(tol) * max(Fraction(1), beta_minus)


def binary_search_beta(system: GainSystem, cfg: SolverConfig | None = None, tol: float | None = None) -> SearchBracket:
    """Bracket beta* with f(beta_minus) feasible and f(beta_plus) infeasible."""
    cfg = cfg or SolverConfig()
    tol = cfg.tol if tol is None else tol
    out = SearchBracket(Fraction(0), Fraction(0))

    def f(beta):
        out.oracle_calls += 1
        return feasible(system, beta, mode=cfg.lp_mode).feasible

    beta = Fraction(1)
    doublings = 0
    while f(beta):
        out.trace.append({"phase": "double", "beta": beta, "feasible": True})
        beta *= 2
        doublings += 1
        if doublings > cfg.max_doublings:
            raise InvalidSystem([f"system stays feasible beyond beta = 2^{cfg.max_doublings}"])
    out.trace.append({"phase": "double", "beta": beta, "feasible": False})
    lo = beta / 2 if beta > 1 else Fraction(0)
    hi = beta
    while hi - lo >= _width_target(cfg, tol, system, lo):
        mid = (lo + hi) / 2
        ok = f(mid)
        if ok:
            lo = mid
        else:
            hi = mid
        out.trace.append({"phase": "bisect", "beta_minus": lo, "beta_plus": hi})
    if lo == 0:
        raise InvalidSystem(["oracle reported infeasible at every probed beta"])
    out.beta_minus, out.beta_plus = lo, hi
    return out


def eliminate_affectors(system: GainSystem, beta_minus, cfg: SolverConfig | None = None, trace: list | None = None) -> Selection:
    """Fix one supporter per entity while keeping the contracted system feasible."""
    cfg = cfg or SolverConfig()
    sel = Selection.empty(system)
    for t in range(system.n):
        for j in sorted(system.supporters[t]):
            cand = sel.extend(t, j)
            if feasible(apply_selection(system, cand), beta_minus, mode=cfg.lp_mode).feasible:
                sel = cand
                if trace is not None:
                    trace.append({"entity": t, "affector": j})
                break
        else:
            raise NoExtendingSupporter(t, beta_minus)
    return sel


def verify_solution(
    system: GainSystem,
    beta_star: float,
    x,
    eps: float,
    mode: str = "exact",
) -> dict:
    """Post-conditions of an optimal 0*-solution.

    Checks SR equality, nonnegativity, one active supporter per entity, and
    that beta*(1-eps) is feasible while beta*(1+eps) is not.
    """
    x = np.asarray([float(v) for v in x])
    support, repression = totals(system, x)
    scale = max(1.0, float(np.abs(support).max()))
    sr_gap = float(np.abs(repression - support / beta_star).max())
    active = [j for j in range(system.m) if x[j] > 0]
    per_entity = [sorted(set(active) & s) for s in system.supporters]
    structure = len(active) == system.n and all(len(a) == 1 for a in per_entity)
    b = to_rational(beta_star)
    eps_q = to_rational(eps)
    below = feasible(system, b * (1 - eps_q), mode=mode)
    above = feasible(system, b * (1 + eps_q), mode=mode)
    checks = {
        "sr_equality": sr_gap <= SR_EQUALITY_TOL * scale,
        "sr_max_gap": sr_gap,
        "nonnegative": bool((x >= 0).all()),
        "zero_star_structure": structure,
        "active": active,
        "feasible_below": below.feasible,
        "infeasible_above": not above.feasible,
        "eps": eps,
        "positive_root": beta_star > 0 and math.isfinite(beta_star),
    }
    checks["ok"] = all(
        checks[k]
        for k in ("sr_equality", "nonnegative", "zero_star_structure", "feasible_below", "infeasible_above", "positive_root")
    )
    return checks


def _attempt(system, cfg, tol):
    bracket = binary_search_beta(system, cfg, tol)
    choices = []
    sel = eliminate_affectors(system, bracket.beta_minus, cfg, choices)
    square = apply_selection(system, sel)
    z = z_matrix(square)
    pf = pf_root_vector(z, tol=cfg.pf_tol)
    exact = None
    root = pf.root
    if system.n <= EXACT_LIMIT:
        exact = char_poly_root_exact(z, precision=Fraction(1, 10**15))
        root = float(exact.midpoint)
    beta_star = 1.0 / root
    x = natural_extension(list(pf.vector), sel, system.m)
    mode = "exact" if cfg.exact_verify else cfg.lp_mode
    checks = verify_solution(system, beta_star, x, 10 * tol, mode=mode)
    checks["root_agreement"] = abs(pf.root - root) <= 1e-9 * max(1.0, root)
    checks["ok"] = checks["ok"] and checks["root_agreement"]
    return bracket, choices, sel, exact, root, pf, beta_star, x, checks


def solve(system: GainSystem, cfg: SolverConfig | None = None) -> PfSolution:
    cfg = cfg or SolverConfig()
    problems = validate(system)
    if problems:
        raise InvalidSystem(problems)
    reduced, removed = remove_redundant_affectors(system)
    kept = [j for j in range(system.m) if j not in set(removed)]
    report = test_irreducible(reduced)
    if not report.irreducible:
        raise ReducibleSystem(report, f"reducible system: {report.witness.detail}")

    tol = cfg.tol
    attempts = []
    best = None
    for _ in range(cfg.retries):
        try:
            result = _attempt(reduced, cfg, tol)
        except NoExtendingSupporter as exc:
            attempts.append({"tol": tol, "error": str(exc)})
            tol /= 2
            continue
        checks = result[-1]
        attempts.append({"tol": tol, "ok": checks["ok"]})
        best = result
        if checks["ok"]:
            break
        tol /= 2
    if best is None:
        raise VerificationFailed("elimination failed on every attempt", None, {"attempts": attempts})
    bracket, choices, sel, exact, root, pf, beta_star, x, checks = best
    full_x = [0.0] * system.m
    for k, j in enumerate(kept):
        full_x[j] = float(x[k])
    orig_sel = Selection(system, tuple(kept[c] for c in sel.choice))
    res = residuals(system, full_x, beta_star)
    G = max_gain(system)
    solution = PfSolution(
        beta_star=beta_star,
        root=root,
        x=tuple(full_x),
        selection=orig_sel,
        residuals=tuple(float(v) for v in res),
        exact=exact,
        bracket=(bracket.beta_minus, bracket.beta_plus),
        tol=tol,
        gap=theoretical_gap(system.n, G) if G >= 1 else None,
        removed_affectors=removed,
        verification=checks,
        trace={
            "bracket": bracket.trace,
            "elimination": choices,
            "attempts": attempts,
            "oracle_calls": bracket.oracle_calls,
            "irreducibility_rounds": report.rounds,
        },
    )
    if not checks["ok"]:
        raise VerificationFailed("verification failed after retries", solution, checks)
    return solution
