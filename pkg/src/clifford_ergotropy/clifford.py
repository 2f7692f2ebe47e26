"""Clifford tableaux, exact enumeration and uniform sampling.

A tableau records the conjugation action ``P -> U P U^dagger`` of a Clifford
unitary ``U`` on the generators ``X_0, Z_0, X_1, Z_1, ...`` (in that order).
Global phases are quotiented out, so two tableaux are equal iff they act
identically on every Pauli string.

Canonical indexing
------------------
Tableau index ``k`` splits as ``k = s * 4**n + sigma``.  ``s`` indexes the
symplectic part: the image of ``X_0`` is chosen among all nonzero vectors,
the image of ``Z_0`` among the vectors anticommuting with it, and the
recursion continues on the symplectic complement of the chosen pair.
``sigma`` holds the sign bits, most significant bit for ``X_0``, so that
increasing ``sigma`` orders sign tuples lexicographically.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .pauli import PauliString, _check_same, _mul_phase, _popcount, pauli_commutes

log = logging.getLogger(__name__)

MAX_ENUMERATION_QUBITS = 3


def symplectic_group_order(n: int) -> int:
    """``|Sp(2n, 2)|``."""
    out = 1
    for m in range(1, n + 1):
        out *= (4 ** m - 1) * 2 ** (2 * m - 1)
    return out


def clifford_group_order(n: int) -> int:
    """Number of distinct conjugation actions (Clifford group modulo phases)."""
    return symplectic_group_order(n) * 4 ** n


# --- symplectic recursion in coordinate space ------------------------------
#
# Vectors are bitmasks over a basis (b_0, ..., b_{2m-1}) whose pairs
# (b_{2i}, b_{2i+1}) are symplectic partners.


def _omega(v: int, w: int, nbits: int) -> int:
    # pair i occupies bits (2i, 2i+1)
    even = int("01" * (nbits // 2), 2) if nbits else 0
    ve, vf = v & even, (v >> 1) & even
    we, wf = w & even, (w >> 1) & even
    return _popcount((ve & wf) ^ (vf & we)) & 1


def _combine(basis: list[int], bits: int) -> int:
    out = 0
    i = 0
    while bits:
        if bits & 1:
            out ^= basis[i]
        bits >>= 1
        i += 1
    return out


def _level(basis: list[int], a: int, b: int, nbits: int) -> tuple[int, int, list[int]]:
    """Pick the image pair ``(u, v)`` from digits ``a``, ``b`` and return the
    symplectic basis of the complement of ``span(u, v)`` inside ``span(basis)``."""
    u = _combine(basis, a)
    i0 = next(i for i, w in enumerate(basis) if _omega(w, u, nbits))
    t = basis[i0]
    perp = [w ^ t if _omega(w, u, nbits) else w
            for i, w in enumerate(basis) if i != i0]
    v = t ^ _combine(perp, b)
    proj = []
    for w in basis:
        if _omega(w, v, nbits):
            w ^= u
        if _omega(w, u, nbits):
            w ^= v
        proj.append(w)
    return u, v, _symplectic_gram_schmidt(proj, nbits)


def _symplectic_gram_schmidt(vectors: list[int], nbits: int) -> list[int]:
    rest = [w for w in vectors if w]
    out: list[int] = []
    while rest:
        p = rest[0]
        j = next(j for j in range(1, len(rest)) if _omega(p, rest[j], nbits))
        q = rest[j]
        out += [p, q]
        nxt = []
        for k, w in enumerate(rest):
            if k in (0, j):
                continue
            if _omega(w, q, nbits):
                w ^= p
            if _omega(w, p, nbits):
                w ^= q
            if w:
                nxt.append(w)
        rest = nxt
    return out


def _digits_from_index(n: int, s: int) -> list[tuple[int, int]]:
    if not 0 <= s < symplectic_group_order(n):
        raise ValueError("symplectic index out of range")
    digits = []
    for m in range(n, 0, -1):
        sub = symplectic_group_order(m - 1)
        top, s = divmod(s, sub)
        a, b = divmod(top, 2 ** (2 * m - 1))
        digits.append((a + 1, b))
    return digits


def _coords_from_digits(n: int, digits: list[tuple[int, int]]) -> list[int]:
    nbits = 2 * n
    basis = [1 << i for i in range(nbits)]
    images = []
    for a, b in digits:
        u, v, basis = _level(basis, a, b, nbits)
        images += [u, v]
    return images


@lru_cache(maxsize=None)
def _sp_coords(m: int) -> np.ndarray:
    """All symplectic images of the standard basis for ``Sp(2m, 2)`` as an
    ``(|Sp|, 2m)`` array of coordinate masks, in canonical index order."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    nbits = 2 * m
    sub = _sp_coords(m - 1)
    std = [1 << i for i in range(nbits)]
    blocks = []
    for a in range(1, 4 ** m):
        for b in range(2 ** (2 * m - 1)):
            u, v, comp = _level(std, a, b, nbits)
            table = np.array([_combine(comp, c) for c in range(4 ** (m - 1))],
                             dtype=np.int64)
            block = np.empty((sub.shape[0], nbits), dtype=np.int64)
            block[:, 0] = u
            block[:, 1] = v
            block[:, 2:] = table[sub]
            blocks.append(block)
    out = np.concatenate(blocks)
    out.setflags(write=False)
    return out


def _coord_generators(n: int) -> list[int]:
    """Label indices of X_0, Z_0, X_1, Z_1, ... (coordinate bit ``i`` <-> entry ``i``)."""
    gens = []
    for j in range(n):
        bit = 1 << (n - 1 - j)
        gens += [bit << n, bit]            # X_j -> x-part, Z_j -> z-part
    return gens


def _coord_to_pauli(n: int, c: int) -> int:
    return _combine(_coord_generators(n), c)


def _pauli_to_coord(n: int, index: int) -> int:
    return _solve_coords(_coord_generators(n), index)


@lru_cache(maxsize=None)
def _coord_to_pauli_table(n: int) -> np.ndarray:
    """Map every coordinate mask over (X_0, Z_0, X_1, Z_1, ...) to its label index."""
    c = np.arange(4 ** n, dtype=np.int64)
    out = np.zeros_like(c)
    for i, g in enumerate(_coord_generators(n)):
        out ^= ((c >> i) & 1) * g
    out.setflags(write=False)
    return out


def _generator_strings(n: int) -> list[PauliString]:
    out = []
    for j in range(n):
        bit = 1 << (n - 1 - j)
        out += [PauliString(n, bit, 0), PauliString(n, 0, bit)]
    return out


# --- tableau ---------------------------------------------------------------


@dataclass(frozen=True)
class CliffordTableau:
    """Images of ``X_0, Z_0, ..., X_{n-1}, Z_{n-1}`` under ``P -> U P U^dagger``."""

    n_qubits: int
    images: tuple[PauliString, ...]

    def __post_init__(self):
        if len(self.images) != 2 * self.n_qubits:
            raise ValueError("need one image per generator (2n images)")
        for p in self.images:
            _check_same(p.n_qubits, self.n_qubits)

    def x_image(self, j: int) -> PauliString:
        return self.images[2 * j]

    def z_image(self, j: int) -> PauliString:
        return self.images[2 * j + 1]

    @classmethod
    def identity(cls, n: int) -> "CliffordTableau":
        return cls(n, tuple(_generator_strings(n)))

    @classmethod
    def from_labels(cls, labels: list[str]) -> "CliffordTableau":
        """Build from signed labels of the images of X_0, Z_0, X_1, Z_1, ..."""
        images = tuple(PauliString.from_label(s) for s in labels)
        return cls(images[0].n_qubits, images)

    @classmethod
    def from_index(cls, n: int, index: int) -> "CliffordTableau":
        """Tableau at position ``index`` of the canonical enumeration."""
        s, sigma = divmod(index, 4 ** n)
        coords = _coords_from_digits(n, _digits_from_index(n, s))
        return _tableau_from_coords(n, coords, sigma)

    @property
    def index(self) -> int:
        """Inverse of :meth:`from_index`."""
        n = self.n_qubits
        coords = [_pauli_to_coord(n, p.index) for p in self.images]
        nbits = 2 * n
        basis = [1 << i for i in range(nbits)]
        s = 0
        for m in range(n, 0, -1):
            u, v = coords[2 * (n - m)], coords[2 * (n - m) + 1]
            a = _solve_coords(basis, u)
            i0 = next(i for i, w in enumerate(basis) if _omega(w, u, nbits))
            t = basis[i0]
            perp = [w ^ t if _omega(w, u, nbits) else w
                    for i, w in enumerate(basis) if i != i0]
            b = _solve_coords(perp, v ^ t)
            s = s * ((4 ** m - 1) * 2 ** (2 * m - 1)) + (a - 1) * 2 ** (2 * m - 1) + b
            _, _, basis = _level(basis, a, b, nbits)
        sigma = 0
        for p in self.images:
            sigma = (sigma << 1) | (p.sign < 0)
        return s * 4 ** n + sigma

    def action_key(self) -> tuple:
        """Hashable summary of the action (images of generators with signs)."""
        return tuple((p.x, p.z, p.sign) for p in self.images)

    def labels(self) -> list[str]:
        return [str(p) for p in self.images]


def _solve_coords(basis: list[int], target: int) -> int:
    """Coefficient mask ``c`` with ``_combine(basis, c) == target`` (basis independent)."""
    # basis is small (<= 2n vectors); Gaussian elimination over GF(2)
    rows = [(w, 1 << i) for i, w in enumerate(basis)]
    pivots = []
    for w, tag in rows:
        for pw, ptag, pbit in pivots:
            if w & pbit:
                w ^= pw
                tag ^= ptag
        if w:
            pivots.append((w, tag, w & -w))
    c = 0
    for pw, ptag, pbit in pivots:
        if target & pbit:
            target ^= pw
            c ^= ptag
    if target:
        raise ValueError("vector not in span")
    return c


def _tableau_from_coords(n: int, coords, sigma: int) -> CliffordTableau:
    images = []
    for k, c in enumerate(coords):
        sign = -1 if (sigma >> (2 * n - 1 - k)) & 1 else 1
        images.append(PauliString.from_index(n, _coord_to_pauli(n, int(c)), sign))
    return CliffordTableau(n, tuple(images))


def conjugate(t: CliffordTableau, p: PauliString) -> PauliString:
    """Image ``U P U^dagger`` of ``p`` as a signed Pauli string."""
    _check_same(t.n_qubits, p.n_qubits)
    n = p.n_qubits
    k = _popcount(p.x & p.z) + (2 if p.sign < 0 else 0)
    cx = cz = 0
    # P(x, z) = i^{|x&z|} prod_j X_j^{x_j} prod_j Z_j^{z_j}
    for part, offset in ((p.x, 0), (p.z, 1)):
        for j in range(n):
            if (part >> (n - 1 - j)) & 1:
                img = t.images[2 * j + offset]
                k += _mul_phase(cx, cz, img.x, img.z) + (2 if img.sign < 0 else 0)
                cx ^= img.x
                cz ^= img.z
    k %= 4
    if k not in (0, 2):
        raise ValueError("tableau is not symplectic: image is not Hermitian")
    return PauliString(n, cx, cz, 1 if k == 0 else -1)


def compose(t1: CliffordTableau, t2: CliffordTableau) -> CliffordTableau:
    """Tableau of ``U1 U2``: apply ``t2``'s conjugation, then ``t1``'s."""
    _check_same(t1.n_qubits, t2.n_qubits)
    return CliffordTableau(t1.n_qubits, tuple(conjugate(t1, p) for p in t2.images))


def inverse(t: CliffordTableau) -> CliffordTableau:
    """Tableau of ``U^dagger``."""
    n = t.n_qubits
    gens = _generator_strings(n)
    image_idx = [p.index for p in t.images]
    inv_images = []
    for g in gens:
        # preimage of g is the product of the generators whose images combine to g
        c = _solve_coords(image_idx, g.index)
        cand = PauliString.from_index(n, _combine([h.index for h in gens], c))
        img = conjugate(t, cand)
        inv_images.append(cand if img.sign == 1 else -cand)
    return CliffordTableau(n, tuple(inv_images))


def symplectic_check(t: CliffordTableau) -> bool:
    """True iff the images reproduce the canonical (anti)commutation pattern."""
    imgs = t.images
    if any(p.is_identity() for p in imgs):
        return False
    for a in range(len(imgs)):
        for b in range(a + 1, len(imgs)):
            partners = a // 2 == b // 2
            if pauli_commutes(imgs[a], imgs[b]) == partners:
                return False
    return True


# --- enumeration and sampling ----------------------------------------------


def _check_enumerable(n: int, allow_large: bool) -> None:
    if n < 1 or n > MAX_ENUMERATION_QUBITS:
        raise ValueError(f"exhaustive enumeration supports n in 1..{MAX_ENUMERATION_QUBITS}")
    if n == 3 and not allow_large:
        raise ValueError("n=3 enumeration (92,897,280 actions) requires allow_large=True")


def symplectic_table(n: int, allow_large: bool = False) -> np.ndarray:
    """``(|Sp(2n,2)|, 2n)`` array of generator-image label indices (signs +1)."""
    _check_enumerable(n, allow_large)
    return _coord_to_pauli_table(n)[_sp_coords(n)]


def enumerate_cliffords(n: int, allow_large: bool = False,
                        start: int = 0, stop: int | None = None) -> Iterator[CliffordTableau]:
    """Yield every distinct conjugation action once, in canonical index order.

    ``start``/``stop`` select an index range so the stream can be partitioned.
    """
    _check_enumerable(n, allow_large)
    total = clifford_group_order(n)
    stop = total if stop is None else min(stop, total)
    sym = symplectic_table(n, allow_large)
    nsig = 4 ** n
    for k in range(start, stop):
        s, sigma = divmod(k, nsig)
        images = []
        for g, idx in enumerate(sym[s]):
            sign = -1 if (sigma >> (2 * n - 1 - g)) & 1 else 1
            images.append(PauliString.from_index(n, int(idx), sign))
        yield CliffordTableau(n, tuple(images))


def _randbelow(rng: np.random.Generator, high: int) -> int:
    if high <= 2 ** 62:
        return int(rng.integers(high))
    nbits = high.bit_length()
    while True:
        v = 0
        for _ in range(0, nbits, 32):
            v = (v << 32) | int(rng.integers(2 ** 32))
        v &= (1 << nbits) - 1
        if v < high:
            return v


def random_clifford(n: int, rng=None) -> CliffordTableau:
    """Uniformly random Clifford action (modulo phases).

    ``rng`` is a ``numpy.random.Generator`` or anything accepted by
    ``numpy.random.default_rng``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(rng)
    digits = [(1 + _randbelow(rng, 4 ** m - 1), _randbelow(rng, 2 ** (2 * m - 1)))
              for m in range(n, 0, -1)]
    sigma = _randbelow(rng, 4 ** n)
    return _tableau_from_coords(n, _coords_from_digits(n, digits), sigma)


# --- named gates -----------------------------------------------------------


def _single_qubit_gate(n: int, q: int, x_img: str, z_img: str) -> CliffordTableau:
    t = CliffordTableau.identity(n)
    images = list(t.images)
    bit = 1 << (n - 1 - q)

    def embed(label: str) -> PauliString:
        local = PauliString.from_label(label)
        return PauliString(n, bit * local.x, bit * local.z, local.sign)

    images[2 * q] = embed(x_img)
    images[2 * q + 1] = embed(z_img)
    return CliffordTableau(n, tuple(images))


def hadamard(n: int, q: int) -> CliffordTableau:
    return _single_qubit_gate(n, q, "Z", "X")


def phase_gate(n: int, q: int) -> CliffordTableau:
    """S = diag(1, i): X -> Y, Z -> Z."""
    return _single_qubit_gate(n, q, "Y", "Z")


def pauli_gate(n: int, q: int, which: str) -> CliffordTableau:
    x_img = "-X" if which in "YZ" else "X"
    z_img = "-Z" if which in "XY" else "Z"
    return _single_qubit_gate(n, q, x_img, z_img)


def cnot(n: int, control: int, target: int) -> CliffordTableau:
    if control == target:
        raise ValueError("control and target must differ")
    t = CliffordTableau.identity(n)
    images = list(t.images)
    cbit, tbit = 1 << (n - 1 - control), 1 << (n - 1 - target)
    images[2 * control] = PauliString(n, cbit | tbit, 0)      # X_c -> X_c X_t
    images[2 * target + 1] = PauliString(n, 0, cbit | tbit)   # Z_t -> Z_c Z_t
    return CliffordTableau(n, tuple(images))


def embed_tableau(local: CliffordTableau, n: int, qubits: tuple[int, ...]) -> CliffordTableau:
    """Place a ``len(qubits)``-qubit tableau on the given qubits of ``n``."""
    m = local.n_qubits
    if len(qubits) != m:
        raise ValueError("qubit list must match the local tableau size")

    def lift(p: PauliString) -> PauliString:
        x = z = 0
        for i, q in enumerate(qubits):
            bit = 1 << (n - 1 - q)
            if (p.x >> (m - 1 - i)) & 1:
                x |= bit
            if (p.z >> (m - 1 - i)) & 1:
                z |= bit
        return PauliString(n, x, z, p.sign)

    images = list(CliffordTableau.identity(n).images)
    for i, q in enumerate(qubits):
        images[2 * q] = lift(local.images[2 * i])
        images[2 * q + 1] = lift(local.images[2 * i + 1])
    return CliffordTableau(n, tuple(images))


def tableau_unitary(t: CliffordTableau) -> np.ndarray:
    """Dense unitary ``U`` (up to global phase) with ``U P U^dagger = t(P)``.

    Uses ``sum_P t(P) E P^dagger = d Tr[U^dagger E] U``; practical for n <= 5.
    """
    n = t.n_qubits
    d = 1 << n
    paulis = [PauliString.from_index(n, i) for i in range(d * d)]
    imgs = [conjugate(t, p).to_matrix() for p in paulis]
    mats = [p.to_matrix() for p in paulis]
    best = None
    for j in range(d):
        # E = |0><j|
        m = sum(np.outer(im[:, 0], pm.conj().T[j, :]) for im, pm in zip(imgs, mats))
        fro = np.linalg.norm(m)
        if best is None or fro > best[0]:
            best = (fro, m)
        if fro > 0.5 * d:
            break
    m = best[1]
    u = m / np.sqrt((m @ m.conj().T)[0, 0].real)
    k = np.argmax(np.abs(u.reshape(-1)))
    return u * np.exp(-1j * np.angle(u.reshape(-1)[k]))
