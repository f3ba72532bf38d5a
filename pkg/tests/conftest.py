import pytest
from hypothesis import HealthCheck, settings

from superjordan import TriangularRing, TrivialExtension, grade, zn_bimodule, zn_ring

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

# Lines "criterion N: PASS|FAIL ..." appended by test_acceptance.py.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def _te(n, m):
    R = zn_ring(n)
    return TrivialExtension(R, zn_bimodule(m, R, R))


@pytest.fixture(scope="session")
def te_z2():
    return _te(2, 2)


@pytest.fixture(scope="session")
def te_z3():
    return _te(3, 3)


@pytest.fixture(scope="session")
def te_z4_z2():
    return _te(4, 2)


@pytest.fixture(scope="session")
def tri_z3():
    R = zn_ring(3)
    return TriangularRing(R, zn_bimodule(3, R, R), R)


@pytest.fixture(scope="session")
def tri_z2():
    R = zn_ring(2)
    return TriangularRing(R, zn_bimodule(2, R, R), R)


@pytest.fixture(scope="session")
def graded_te_z3(te_z3):
    return grade(te_z3.ring)
