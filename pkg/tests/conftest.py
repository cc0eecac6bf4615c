import os

import pytest
from hypothesis import HealthCheck, settings

from tracekernel.artin import canonical_module, direct_sum, dual_numbers, free_module, residue_field
from tracekernel.gf import GF

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def F2():
    return GF(2)


@pytest.fixture(scope="session")
def F3():
    return GF(3)


@pytest.fixture(scope="session")
def F4():
    return GF(2, 2)


@pytest.fixture(scope="session")
def dual(F2):
    """F2[x]/(x^2) with its small modules."""
    A = dual_numbers(F2)
    R = free_module(A)
    k = residue_field(A)
    return {"A": A, "R": R, "k": k, "omega": canonical_module(A), "Rk": direct_sum(R, k)}


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def record(request):
    """record(criterion, ok, detail) prints a line now and again in the summary."""

    def _record(name, ok, detail=""):
        line = f"criterion {name}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        request.config.stash[ACCEPTANCE_KEY].append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
