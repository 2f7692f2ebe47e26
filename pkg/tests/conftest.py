"""Shared helpers: dense-matrix oracles built with Kronecker products."""
import itertools
from functools import reduce

import numpy as np
import pytest

from clifford_ergotropy.pauli import DensityMatrix, PauliOperator, PureState

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
SINGLE = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense_pauli(label: str) -> np.ndarray:
    """Kronecker product with qubit 0 leftmost."""
    return reduce(np.kron, [SINGLE[c] for c in label])


def all_labels(n: int):
    return ["".join(t) for t in itertools.product("IXYZ", repeat=n)]


def random_pure(n, rng):
    v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return PureState(n, v / np.linalg.norm(v))


def random_mixed(n, rng, rank=None):
    d = 1 << n
    rank = d if rank is None else rank
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = a @ a.conj().T
    return DensityMatrix(n, m / np.trace(m))


def random_hamiltonian(n, rng, max_terms=9):
    labels = all_labels(n)[1:]
    k = int(rng.integers(1, min(max_terms, len(labels)) + 1))
    chosen = rng.choice(len(labels), size=k, replace=False)
    return PauliOperator(n, [(labels[i], rng.uniform(-2, 2)) for i in chosen])


def random_unitary(d, rng):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# acceptance lines recorded by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
