import time

import pytest
from hypothesis import settings

from genpf.oracle import enumerate_solve, irreducible_corpus
from genpf.solver import solve

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

CORPUS_SIZE = 200
CORPUS_SEED = 20240601

CRITERIA = {
    1: "oracle equivalence on the random corpus",
    2: "SYS-B root and non-log-convexity",
    3: "SYS-A root and active-support ratio",
    4: "invariant suite on every solved instance",
    5: "irreducibility agreement and round bound",
    6: "square PF kernel vs exact roots",
    7: "gap formula and practical-gap reporting",
    8: "CLI solve/verify round trip and schema",
    9: "determinism of reports",
}
_outcomes: dict[int, list[bool]] = {}


@pytest.fixture(scope="session")
def corpus():
    """(accepted, rejected) lists of (seed, system)."""
    return irreducible_corpus(CORPUS_SIZE, CORPUS_SEED)


@pytest.fixture(scope="session")
def solved_corpus(corpus):
    t0 = time.perf_counter()
    rows = []
    for seed, system in corpus[0]:
        rows.append((seed, system, solve(system), enumerate_solve(system)))
    return rows, time.perf_counter() - t0


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(crit, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status:7s} {label}")
