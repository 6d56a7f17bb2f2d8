import numpy as np
import pytest

from petzaug.channel import CQChannel, random_channel

ACCEPTANCE_VERDICTS = []


def record_verdict(line):
    """Collect acceptance verdict lines for the end-of-run summary."""
    ACCEPTANCE_VERDICTS.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


def orthogonal_channel(n):
    """n orthogonal pure states in dimension n (classical identity)."""
    states = np.stack(
        [np.diag([1.0 + 0j if i == j else 0.0 for i in range(n)]) for j in range(n)]
    )
    return CQChannel(states, ensemble="orthogonal-pure")


def identical_channel(n, d, seed=0):
    """n copies of one random density matrix; every capacity is 0."""
    rho = random_channel(1, d, seed).states[0]
    return CQChannel(np.stack([rho] * n), ensemble="identical")


def random_density(d, seed):
    return random_channel(1, d, seed).states[0]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def qubit_channel():
    return random_channel(4, 2, seed=42)


@pytest.fixture
def small_channel():
    return random_channel(4, 3, seed=7)
