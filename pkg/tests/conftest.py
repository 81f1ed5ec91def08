from __future__ import annotations

import pytest

from demerit.classify import bruteforce_con, isom_representatives
from demerit.moments import ssac_central_moment, with_sols

# criterion number -> (description, "PASS" | "FAIL" | "SKIP", detail)
ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


@pytest.fixture(scope="session")
def moments():
    """SSAC central moments for p = 1..4, computed once per test session."""
    return {p: ssac_central_moment(p) for p in range(1, 5)}


@pytest.fixture(scope="session")
def con2():
    return sorted(bruteforce_con(2), key=str)


@pytest.fixture(scope="session")
def con3():
    return sorted(bruteforce_con(3), key=str)


@pytest.fixture(scope="session")
def classes3():
    return with_sols(isom_representatives(3))


@pytest.fixture(scope="session")
def classes4():
    return with_sols(isom_representatives(4))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        text, status, detail = ACCEPTANCE[number]
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}{suffix}")
