"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

from permrack.perm import Permutation
from permrack.rack import Rack

ACCEPTANCE_TITLES = {
    1: "golden multiplication tables",
    2: "profile and detail examples on R, S, T, U, V",
    3: "duality of the Z5 linear Alexander quandles",
    4: "octahedron opposite and connectivity",
    5: "stable subracks of R9",
    6: "classification counts against closed forms",
    7: "enumeration oracle at order 4",
    8: "quandles of profile {1, n-1}, orders 3..8",
    9: "property suites",
    10: "knot colorings",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number): acceptance criterion this test belongs to")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = dict(report.user_properties).get("acceptance")
    if number is None:
        return
    _outcomes.setdefault(number, []).append((report.nodeid, report.outcome))


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        item.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        ok = all(outcome == "passed" for _, outcome in results)
        failed = [nid.split("::")[-1] for nid, outcome in results if outcome != "passed"]
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {ACCEPTANCE_TITLES.get(number, '')}"
        if failed:
            line += f"  (failing: {', '.join(failed)})"
        terminalreporter.write_line(line)


@contextmanager
def time_limit(seconds: float):
    """Fail the enclosing test if the block takes longer than `seconds`."""
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed <= seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def seq(*cycles: str, n: int) -> Rack:
    return Rack([Permutation.parse(c, n) for c in cycles])


@pytest.fixture(scope="session")
def sample_racks() -> dict[str, Rack]:
    """The five order-4 racks used to contrast profiles and details."""
    return {
        "R": seq("()", "()", "(1 2)", "(1 2)", n=4),
        "S": seq("()", "()", "(3 4)", "(3 4)", n=4),
        "T": seq("(1 2 3)", "(1 2 3)", "(1 2 3)", "(1 2 3)", n=4),
        "U": seq("(1 2 3)", "(1 2 3)", "(1 2 3)", "(1 3 2)", n=4),
        "V": seq("(2 3 4)", "(1 4 3)", "(1 2 4)", "(1 3 2)", n=4),
    }


@pytest.fixture(scope="session")
def enumerated_small():
    """Every rack class of orders 1..4, keyed by order."""
    from permrack.enumeration import enumerate_racks

    return {n: enumerate_racks(n, "racks") for n in range(1, 5)}
