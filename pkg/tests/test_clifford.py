from collections import Counter, deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from clifford_ergotropy.clifford import (
    CliffordTableau,
    clifford_group_order,
    cnot,
    compose,
    conjugate,
    embed_tableau,
    enumerate_cliffords,
    hadamard,
    inverse,
    pauli_gate,
    phase_gate,
    random_clifford,
    symplectic_check,
    symplectic_group_order,
    symplectic_table,
    tableau_unitary,
)
from clifford_ergotropy.pauli import PauliString

from conftest import all_labels, dense_pauli

H1 = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
S1 = np.diag([1, 1j])
CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def dense_action(u, n):
    """Signed images of the generators under P -> U P U^dagger, read off by trace."""
    labels = all_labels(n)
    stack = np.array([dense_pauli(lab) for lab in labels])
    key = []
    for j in range(n):
        for letter in "XZ":
            gen = "".join(letter if k == j else "I" for k in range(n))
            img = u @ dense_pauli(gen) @ u.conj().T
            coeffs = np.einsum("kab,ba->k", stack, img).real / 2 ** n
            best = int(np.argmax(np.abs(coeffs)))
            assert abs(abs(coeffs[best]) - 1) < 1e-9
            p = PauliString.from_label(labels[best])
            key.append((p.x, p.z, 1 if coeffs[best] > 0 else -1))
    return tuple(key)


def test_group_orders():
    assert [clifford_group_order(n) for n in (1, 2, 3)] == [24, 11520, 92897280]
    assert [symplectic_group_order(n) for n in (1, 2, 3)] == [6, 720, 1451520]


@pytest.mark.parametrize("n, count", [(1, 24), (2, 11520)])
def test_enumeration_distinct_and_symplectic(n, count):
    tabs = list(enumerate_cliffords(n))
    assert len(tabs) == count
    assert len({t.action_key() for t in tabs}) == count
    assert all(symplectic_check(t) for t in tabs)


def test_enumeration_equals_gate_closure():
    # breadth-first closure of {H, S, CNOT} acting on dense generator images
    gens = [np.kron(H1, np.eye(2)), np.kron(np.eye(2), H1),
            np.kron(S1, np.eye(2)), np.kron(np.eye(2), S1), CX]
    labels = all_labels(2)
    stack = np.array([dense_pauli(lab) for lab in labels])
    signed = [(PauliString.from_label(lab).x, PauliString.from_label(lab).z) for lab in labels]

    def key(images):
        coeffs = np.einsum("kab,gba->gk", stack, images).real / 4
        best = np.argmax(np.abs(coeffs), axis=1)
        return tuple(signed[b] + (1 if coeffs[g, b] > 0 else -1,) for g, b in enumerate(best))

    start = np.array([dense_pauli(lab) for lab in ("XI", "ZI", "IX", "IZ")])
    seen = {key(start)}
    queue = deque([start])
    while queue:
        images = queue.popleft()
        for g in gens:
            nxt = g @ images @ g.conj().T
            k = key(nxt)
            if k not in seen:
                seen.add(k)
                queue.append(nxt)
    assert len(seen) == 11520
    assert seen == {t.action_key() for t in enumerate_cliffords(2)}


def test_n3_requires_opt_in():
    with pytest.raises(ValueError):
        next(enumerate_cliffords(3))
    with pytest.raises(ValueError):
        next(enumerate_cliffords(4, allow_large=True))


def test_n3_symplectic_table_shape():
    table = symplectic_table(3, allow_large=True)
    assert table.shape == (1451520, 6)
    assert len({tuple(r) for r in table[::997]}) == len(table[::997])


def test_partitioned_enumeration():
    full = [t.action_key() for t in enumerate_cliffords(2)]
    parts = [t.action_key() for a in range(0, 11520, 4000)
             for t in enumerate_cliffords(2, start=a, stop=a + 4000)]
    assert parts == full


@pytest.mark.parametrize("n", [1, 2])
def test_index_roundtrip(n):
    for k, t in enumerate(enumerate_cliffords(n)):
        if k % 37 == 0:
            assert t.index == k
            assert CliffordTableau.from_index(n, k) == t


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 92897279))
def test_index_roundtrip_n3(k):
    t = CliffordTableau.from_index(3, k)
    assert symplectic_check(t)
    assert t.index == k


def test_named_gates_match_dense():
    assert hadamard(1, 0).action_key() == dense_action(H1, 1)
    assert phase_gate(1, 0).action_key() == dense_action(S1, 1)
    assert cnot(2, 0, 1).action_key() == dense_action(CX, 2)
    assert pauli_gate(1, 0, "Y").action_key() == dense_action(dense_pauli("Y"), 1)
    swap_cx = np.kron(H1, H1) @ CX @ np.kron(H1, H1)
    assert cnot(2, 1, 0).action_key() == dense_action(swap_cx, 2)
    with pytest.raises(ValueError):
        cnot(2, 1, 1)


def test_embed_tableau():
    t = embed_tableau(hadamard(1, 0), 3, (1,))
    assert t == hadamard(3, 1)
    assert embed_tableau(cnot(2, 0, 1), 3, (2, 0)) == cnot(3, 2, 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_conjugate_matches_dense(seed):
    rng = np.random.default_rng(seed)
    t = random_clifford(2, rng)
    u = tableau_unitary(t)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(4), atol=1e-12)
    for lab in all_labels(2):
        img = conjugate(t, PauliString.from_label(lab))
        np.testing.assert_allclose(u @ dense_pauli(lab) @ u.conj().T, img.to_matrix(), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_compose_and_inverse(seed):
    rng = np.random.default_rng(seed)
    a, b = random_clifford(3, rng), random_clifford(3, rng)
    ab = compose(a, b)
    assert symplectic_check(ab)
    for lab in ["XIZ", "YYI", "-ZXY"]:
        p = PauliString.from_label(lab)
        assert conjugate(ab, p) == conjugate(a, conjugate(b, p))
    assert compose(a, inverse(a)) == CliffordTableau.identity(3)
    assert compose(inverse(a), a) == CliffordTableau.identity(3)


def test_non_symplectic_rejected():
    bad = CliffordTableau.from_labels(["X", "X"])
    assert not symplectic_check(bad)
    with pytest.raises(ValueError):
        conjugate(bad, PauliString.from_label("Y"))


def test_random_clifford_uniform_n1():
    rng = np.random.default_rng(7)
    counts = Counter(random_clifford(1, rng).index for _ in range(24000))
    assert set(counts) == set(range(24))
    assert chisquare([counts[k] for k in range(24)]).pvalue > 1e-3


def test_random_clifford_uniform_n2_symplectic_part():
    rng = np.random.default_rng(11)
    counts = Counter(random_clifford(2, rng).index // 16 for _ in range(14400))
    assert chisquare([counts[k] for k in range(720)]).pvalue > 1e-3


def test_random_clifford_reproducible():
    assert random_clifford(4, 123) == random_clifford(4, 123)
    assert symplectic_check(random_clifford(6, 5))
