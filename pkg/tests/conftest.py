import numpy as np
import pytest

from gensqueeze import registered_models

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def models():
    return registered_models()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def record():
    """Collect one pass/fail line per acceptance criterion."""

    def _record(label, passed, detail=""):
        _ACCEPTANCE.append((label, bool(passed), detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {label}  {detail}")
