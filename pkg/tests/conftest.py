import pytest

from vword.group import higman_generators

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def gh():
    return higman_generators()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
