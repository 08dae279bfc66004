import numpy as np
import pytest

# one pass/fail line per acceptance criterion, shown after the run
# (pytest's fd-level capture would otherwise swallow them)
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def fd_grad_state(f, psi, h=1e-5):
    """Central-difference gradient of a real function of a complex vector.

    Entry j is df/dRe(psi_j) + i df/dIm(psi_j), matching the combined-real
    convention used by the analytic gradients.
    """
    psi = np.asarray(psi, dtype=complex)
    g = np.zeros(psi.size, dtype=complex)
    for j in range(psi.size):
        e = np.zeros(psi.size, dtype=complex)
        e[j] = h
        re = (f(psi + e) - f(psi - e)) / (2.0 * h)
        im = (f(psi + 1j * e) - f(psi - 1j * e)) / (2.0 * h)
        g[j] = re + 1j * im
    return g


def fd_grad_real(f, x, h=1e-6):
    """Central-difference gradient of a real function of a real vector."""
    x = np.asarray(x, dtype=float)
    g = np.zeros(x.size)
    for j in range(x.size):
        e = np.zeros(x.size)
        e[j] = h
        g[j] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g
