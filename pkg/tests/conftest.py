import numpy as np
import pytest

from qgloves import linalg


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def singlet():
    return linalg.singlet_projector()


_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; call with (number, title, ok, detail)."""

    def record(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}" + (f"  [{detail}]" if detail else "")
        _CRITERIA.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
