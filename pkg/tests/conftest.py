import pytest

from depthposet.fixtures import circle, dunce_hat

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def circle_fx():
    return circle()


@pytest.fixture
def dunce_fx():
    return dunce_hat()


def labeled(complex, pairs):
    return [(complex.name(s), complex.name(t)) for s, t in pairs]


def cells_by_label(complex, *labels):
    return [complex.by_label(x) for x in labels]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
