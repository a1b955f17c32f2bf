"""Suite-wide fixtures, hypothesis profile, and the acceptance summary block."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

import helpers

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def catalog5():
    """The 32 reference skeletal relations of order <= 5, keyed by number."""
    return helpers.load_catalog5()


@pytest.fixture(scope="session")
def cover_demo():
    return helpers.load_fixture("worked/cover_demo.rel")


@pytest.fixture(scope="session")
def reduction_demo():
    return helpers.load_fixture("worked/reduction_demo.rel")


@pytest.fixture(scope="session")
def union_source():
    return helpers.load_fixture("worked/union_source.rel")


@pytest.fixture(scope="session")
def selfdual6():
    return helpers.load_fixture("worked/selfdual6.rel")


@pytest.fixture(scope="session")
def census5():
    """Census of all skeletal relations up to order 5 (shared across tests)."""
    from tukeyrel import enumerate_skeletal

    return enumerate_skeletal(5)


@pytest.fixture(scope="session")
def catalog5_catalog(census5):
    """Full order-5 catalog: morphism matrix, classes, Hasse edges."""
    from tukeyrel import build_catalog

    return build_catalog(census5)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid:
                name = nodeid.split("::")[-1]
                rows[name] = "PASS" if outcome == "passed" else "FAIL"
    if rows:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name in sorted(rows, key=lambda s: int(s.split("_")[2])):
            terminalreporter.write_line(f"{name}: {rows[name]}")
