import pytest

from prelab.enumeration import subjects

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def general_suite():
    return subjects(2, "general")


@pytest.fixture(scope="session")
def sweep_suite(general_suite):
    from prelab.enumeration import representable_monoids
    from prelab.order import enumerate_preorders

    rep3 = [M for P in enumerate_preorders(3) for M in representable_monoids(P)]
    return general_suite + rep3


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def rep3_suite():
    from prelab.enumeration import representable_monoids
    from prelab.order import enumerate_preorders

    return [M for P in enumerate_preorders(3) for M in representable_monoids(P)]
