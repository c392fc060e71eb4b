import cmath
import math

import pytest

OMEGA = cmath.exp(2j * math.pi / 3)


@pytest.fixture
def xstar():
    """A point lying in the domains of e1, e2, e3 and (1, 2, 0)."""
    return (1 + 0j, OMEGA.conjugate(), OMEGA)


def rel(a, b):
    a, b = complex(a), complex(b)
    s = max(abs(a), abs(b))
    return abs(a - b) / s if s else 0.0


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: (int(s.split()[1].rstrip(":")), s)):
            terminalreporter.write_line(line)
