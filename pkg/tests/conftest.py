import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "known_defect: stated claim that the numerics refute; expected to fail "
        "(deselect with -m 'not known_defect')",
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_unitary(n, rng):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_matrix(n, rng):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
