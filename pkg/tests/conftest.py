from __future__ import annotations

import pytest

from eulersums.hp_numeric import ctx_new


@pytest.fixture(scope="session")
def ctx30():
    return ctx_new(30)


@pytest.fixture(scope="session")
def ctx40():
    return ctx_new(40)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if not acceptance_log.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_log.lines():
        terminalreporter.write_line(line)
