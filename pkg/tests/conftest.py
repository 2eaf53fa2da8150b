import pytest

from sltcalc.slt_model import build_classT, build_nonnormal

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def X517():
    return build_classT(5, 1, 7)


@pytest.fixture(scope="session")
def X35():
    return build_nonnormal(3, 5)


@pytest.fixture(scope="session")
def acceptance_lines():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
