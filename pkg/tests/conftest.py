"""Shared fixtures and the acceptance report hook."""

import sys

import numpy as np
import pytest

from nvqa.qstate import DensityMatrix
from nvqa.randstates import haar_orthogonal


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


def random_mixed_state(n_qubits: int, rng, rank: int | None = None) -> DensityMatrix:
    """Random full- or fixed-rank density matrix via Haar basis and a simplex draw."""
    dim = 2 ** n_qubits
    r = dim if rank is None else rank
    q = haar_orthogonal(dim, rng)
    probs = rng.dirichlet(np.ones(r))
    lam = np.zeros(dim)
    lam[:r] = probs
    data = (q * lam) @ q.T
    return DensityMatrix(n_qubits, data.astype(complex))


@pytest.fixture
def make_mixed():
    return random_mixed_state


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
