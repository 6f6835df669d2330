import os

import pytest
from hypothesis import HealthCheck, settings

from cmtool import alattice
from cmtool.lattice import lll_bound_violations

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


class ReductionAudit:
    """Collects the LLL size-bound check for every reduced ideal lattice."""

    def __init__(self):
        self.checked = 0
        self.violations = []

    def __call__(self, order, gram):
        self.checked += 1
        bad = lll_bound_violations(gram, order.abs_disc)
        if bad:
            self.violations.append((order.n, gram, bad))


AUDIT = ReductionAudit()
alattice.REDUCTION_OBSERVERS.append(AUDIT)


@pytest.fixture(autouse=True)
def _lll_bounds_inline():
    before = len(AUDIT.violations)
    yield
    assert AUDIT.violations[before:] == [], "reduced Gram violates the LLL size bounds"


@pytest.fixture
def reduction_audit():
    return AUDIT


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"LLL size-bound audit: {AUDIT.checked} reduced Gram matrices, "
        f"{len(AUDIT.violations)} violations")
