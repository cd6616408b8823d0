import pytest

from pgraphs import catalog

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def E1():
    return catalog.e1()


@pytest.fixture
def E3():
    return catalog.e3((1, 1))


@pytest.fixture
def E3_22():
    return catalog.e3((2, 2))


@pytest.fixture(scope="session")
def examples():
    return catalog.standard_examples()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
