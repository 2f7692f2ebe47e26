"""Signed Pauli strings, Pauli-sum observables, states and Pauli spectra.

Conventions used throughout the package:

* Qubit 0 is the leftmost character of a text label (``"XZ"`` is X on qubit 0,
  Z on qubit 1) and the most significant bit of a computational-basis index.
* A string is stored as binary masks ``(x, z)`` where qubit ``j`` lives in bit
  ``n - 1 - j``.  The Hermitian operator attached to the masks is
  ``P(x, z) = i^{|x & z|} X^x Z^z``, so that ``x = z = 1`` on a site gives Y.
* The label index of a string is ``(x << n) | z``; index 0 is the identity.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

import numpy as np

MAX_SPECTRUM_QUBITS = 10

_LETTERS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTERS.items()}


def _popcount(v: int) -> int:
    return bin(v).count("1")


def _mul_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Exponent k with P(x1,z1) P(x2,z2) = i^k P(x1^x2, z1^z2)."""
    x3, z3 = x1 ^ x2, z1 ^ z2
    return (_popcount(x1 & z1) + _popcount(x2 & z2) + 2 * _popcount(z1 & x2)
            - _popcount(x3 & z3)) % 4


def _popcount_table(size: int) -> np.ndarray:
    v = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    while v.any():
        out += v & 1
        v = v >> 1
    return out


@dataclass(frozen=True)
class PauliString:
    """Signed N-qubit Pauli string ``sign * P(x, z)``."""

    n_qubits: int
    x: int
    z: int
    sign: int = 1

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        full = (1 << self.n_qubits) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise ValueError("masks do not fit in n_qubits bits")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse ``"XIZ"``, ``"+XY"`` or ``"-ZZ"``."""
        sign = 1
        if label[:1] in "+-" and label:
            sign = -1 if label[0] == "-" else 1
            label = label[1:]
        if not label:
            raise ValueError("empty Pauli label")
        n = len(label)
        x = z = 0
        for j, ch in enumerate(label.upper()):
            if ch not in _BITS:
                raise ValueError(f"invalid Pauli letter {ch!r}")
            bx, bz = _BITS[ch]
            bit = 1 << (n - 1 - j)
            x |= bit * bx
            z |= bit * bz
        return cls(n, x, z, sign)

    @classmethod
    def from_index(cls, n_qubits: int, index: int, sign: int = 1) -> "PauliString":
        return cls(n_qubits, index >> n_qubits, index & ((1 << n_qubits) - 1), sign)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0, 1)

    @property
    def index(self) -> int:
        return (self.x << self.n_qubits) | self.z

    @property
    def label(self) -> str:
        n = self.n_qubits
        return "".join(
            _LETTERS[((self.x >> (n - 1 - j)) & 1, (self.z >> (n - 1 - j)) & 1)]
            for j in range(n))

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def unsigned(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x, self.z, 1)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def __neg__(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x, self.z, -self.sign)

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.label

    def to_matrix(self) -> np.ndarray:
        d = 1 << self.n_qubits
        b = np.arange(d)
        phase = (1j) ** _popcount(self.x & self.z)
        signs = 1 - 2 * (_popcount_table(d)[b & self.z] & 1)
        mat = np.zeros((d, d), dtype=complex)
        mat[b ^ self.x, b] = self.sign * phase * signs
        return mat


def pauli_product(p: PauliString, q: PauliString) -> tuple[int, PauliString]:
    """Return ``(k, r)`` with ``p q = i^k r`` and ``r`` carrying sign +1."""
    _check_same(p.n_qubits, q.n_qubits)
    k = _mul_phase(p.x, p.z, q.x, q.z)
    k = (k + (0 if p.sign == q.sign else 2)) % 4
    return k, PauliString(p.n_qubits, p.x ^ q.x, p.z ^ q.z, 1)


def pauli_commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic product of ``p`` and ``q`` vanishes mod 2."""
    _check_same(p.n_qubits, q.n_qubits)
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) % 2 == 0


def _check_same(n1: int, n2: int) -> None:
    if n1 != n2:
        raise ValueError(f"qubit-count mismatch: {n1} vs {n2}")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PureState:
    """Normalized state vector of ``2**n_qubits`` amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 1 << self.n_qubits:
            raise ValueError(
                f"expected {1 << self.n_qubits} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @classmethod
    def from_vector(cls, vec, normalize: bool = False) -> "PureState":
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        n = int(round(np.log2(vec.size)))
        if 1 << n != vec.size:
            raise ValueError("vector length is not a power of two")
        if normalize:
            vec = vec / np.linalg.norm(vec)
        return cls(n, vec)

    @classmethod
    def basis(cls, bits: str) -> "PureState":
        """Computational basis state from a bit string such as ``"010"``."""
        n = len(bits)
        vec = np.zeros(1 << n, dtype=complex)
        vec[int(bits, 2)] = 1.0
        return cls(n, vec)

    def tensor(self, other: "PureState") -> "PureState":
        return PureState(self.n_qubits + other.n_qubits,
                         np.kron(self.amplitudes, other.amplitudes))

    def projector(self) -> "DensityMatrix":
        return DensityMatrix(self.n_qubits,
                             np.outer(self.amplitudes, self.amplitudes.conj()))

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    n_qubits: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = 1 << self.n_qubits
        mat = np.array(self.matrix, dtype=complex)
        if mat.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(mat) - 1.0) > 1e-12:
            raise ValueError("density matrix does not have unit trace")
        if np.linalg.eigvalsh(mat).min() < -1e-10:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", _readonly(mat))

    @classmethod
    def from_bloch(cls, bloch) -> "DensityMatrix":
        rx, ry, rz = (float(c) for c in bloch)
        mat = 0.5 * np.array([[1 + rz, rx - 1j * ry], [rx + 1j * ry, 1 - rz]])
        return cls(1, mat)

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityMatrix":
        d = 1 << n_qubits
        return cls(n_qubits, np.eye(d) / d)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits


State = Union[PureState, DensityMatrix]


def as_density(state: State) -> DensityMatrix:
    return state.projector() if isinstance(state, PureState) else state


def density_matrix(state: State) -> np.ndarray:
    return as_density(state).matrix


def pauli_apply(p: PauliString, v: PureState) -> PureState:
    """Return ``P|v>``."""
    _check_same(p.n_qubits, v.n_qubits)
    b = np.arange(v.dim)
    signs = 1 - 2 * (_popcount_table(v.dim)[b & p.z] & 1)
    phase = p.sign * (1j) ** _popcount(p.x & p.z)
    out = np.empty(v.dim, dtype=complex)
    out[b ^ p.x] = phase * signs * v.amplitudes
    return PureState(v.n_qubits, out)


def _real_checked(value: complex, what: str = "expectation value") -> float:
    if abs(value.imag) > 1e-10:
        raise ValueError(f"{what} has imaginary part {value.imag:.3g}; "
                         "input is not Hermitian")
    return float(value.real)


def pauli_expectation(state: State, p: PauliString) -> float:
    """``Tr[rho P]`` for a pure state or density matrix."""
    _check_same(p.n_qubits, state.n_qubits)
    d = state.dim
    b = np.arange(d)
    signs = 1 - 2 * (_popcount_table(d)[b & p.z] & 1)
    phase = p.sign * (1j) ** _popcount(p.x & p.z)
    if isinstance(state, PureState):
        psi = state.amplitudes
        val = phase * np.sum(psi.conj()[b ^ p.x] * signs * psi)
    else:
        val = phase * np.sum(state.matrix[b, b ^ p.x] * signs)
    return _real_checked(complex(val))


def _fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis."""
    a = np.array(a)
    lead = a.shape[:-1]
    d = a.shape[-1]
    h = 1
    while h < d:
        a = a.reshape(*lead, d // (2 * h), 2, h)
        a = np.stack((a[..., 0, :] + a[..., 1, :], a[..., 0, :] - a[..., 1, :]),
                     axis=-2)
        h *= 2
    return a.reshape(*lead, d)


def _pauli_transform(mat: np.ndarray, n: int) -> np.ndarray:
    """``Tr[M P_mu]`` for every label index mu, as a complex array of length 4^n."""
    d = 1 << n
    b = np.arange(d)
    xs = b[:, None]
    v = mat[b[None, :], b[None, :] ^ xs]           # v[x, b] = M[b, b ^ x]
    w = _fwht(v)                                   # w[x, z]
    pc = _popcount_table(d)[xs & b[None, :]]
    return (w * (1j) ** pc).reshape(-1)


def _pure_pauli_transform(psi: np.ndarray, n: int) -> np.ndarray:
    d = 1 << n
    b = np.arange(d)
    xs = b[:, None]
    v = psi[None, :] * psi.conj()[b[None, :] ^ xs]
    w = _fwht(v)
    pc = _popcount_table(d)[xs & b[None, :]]
    return (w * (1j) ** pc).reshape(-1)


def pauli_coefficients(state: State, max_qubits: int = MAX_SPECTRUM_QUBITS) -> np.ndarray:
    """All Pauli coefficients ``rho_mu`` (identity included) indexed by label index."""
    if state.n_qubits > max_qubits:
        raise ValueError(
            f"exhaustive Pauli coefficients refused for N={state.n_qubits} "
            f"(limit {max_qubits})")
    if isinstance(state, PureState):
        c = _pure_pauli_transform(state.amplitudes, state.n_qubits)
    else:
        c = _pauli_transform(state.matrix, state.n_qubits)
    if np.max(np.abs(c.imag), initial=0.0) > 1e-10:
        raise ValueError("Pauli coefficients are not real; input is not Hermitian")
    return c.real.copy()


@dataclass(frozen=True)
class PauliSpectrum:
    """Absolute Pauli coefficients (identity excluded) sorted nonincreasingly.

    ``index_map[k]`` is the label index of the string carrying ``r[k]``.
    """

    n_qubits: int
    r: np.ndarray = field(repr=False)
    index_map: np.ndarray = field(repr=False)

    @property
    def r1(self) -> float:
        return float(self.r[0])

    def labels(self, count: int | None = None) -> list[str]:
        idx = self.index_map if count is None else self.index_map[:count]
        return [PauliString.from_index(self.n_qubits, int(i)).label for i in idx]


def spectrum_from_coefficients(coeffs: np.ndarray, n_qubits: int) -> PauliSpectrum:
    absval = np.abs(np.asarray(coeffs, dtype=float))[1:]
    order = np.argsort(-absval, kind="stable")
    return PauliSpectrum(n_qubits, _readonly(absval[order]), _readonly(order + 1))


def pauli_spectrum(state: State, max_qubits: int = MAX_SPECTRUM_QUBITS) -> PauliSpectrum:
    """Nonincreasing absolute Pauli coefficients of ``state`` (identity excluded).

    Ties are broken by label index.  Raises ``ValueError`` above ``max_qubits``.
    """
    return spectrum_from_coefficients(pauli_coefficients(state, max_qubits),
                                      state.n_qubits)


class PauliOperator:
    """Real-weighted sum of Pauli strings with the identity term removed.

    Terms are keyed by unsigned strings; signed inputs fold their sign into the
    coefficient, duplicates are summed and zeros dropped.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n_qubits: int, terms: Iterable[tuple[PauliString | str, float]] | Mapping = ()):
        if n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[PauliString, float] = {}
        for key, coeff in items:
            p = PauliString.from_label(key) if isinstance(key, str) else key
            _check_same(p.n_qubits, n_qubits)
            coeff = float(coeff)
            if not np.isfinite(coeff):
                raise ValueError(f"non-finite coefficient for {p.label}")
            if p.is_identity():
                if coeff != 0.0:
                    raise ValueError("identity term not allowed; operators are traceless")
                continue
            u = p.unsigned()
            acc[u] = acc.get(u, 0.0) + p.sign * coeff
        self._n = n_qubits
        self._terms = {p: c for p, c in acc.items() if c != 0.0}

    @property
    def n_qubits(self) -> int:
        return self._n

    @property
    def terms(self) -> dict[PauliString, float]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def coefficient(self, label: str | PauliString) -> float:
        p = PauliString.from_label(label) if isinstance(label, str) else label
        return p.sign * self._terms.get(p.unsigned(), 0.0)

    def l1_norm(self) -> float:
        return float(sum(abs(c) for c in self._terms.values()))

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self._n, [(p, -c) for p, c in self._terms.items()])

    def __add__(self, other: "PauliOperator") -> "PauliOperator":
        _check_same(self._n, other._n)
        return PauliOperator(self._n, list(self._terms.items()) + list(other._terms.items()))

    def __mul__(self, scalar: float) -> "PauliOperator":
        return PauliOperator(self._n, [(p, scalar * c) for p, c in self._terms.items()])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (isinstance(other, PauliOperator) and self._n == other._n
                and self._terms == other._terms)

    def __repr__(self) -> str:
        body = ", ".join(f"{p.label}: {c:g}" for p, c in self._terms.items())
        return f"PauliOperator({self._n}, {{{body}}})"

    def to_matrix(self) -> np.ndarray:
        d = 1 << self._n
        mat = np.zeros((d, d), dtype=complex)
        for p, c in self._terms.items():
            mat += c * p.to_matrix()
        return mat

    def to_sparse(self):
        import scipy.sparse as sp

        d = 1 << self._n
        b = np.arange(d)
        pc = _popcount_table(d)
        mat = sp.csr_matrix((d, d), dtype=complex)
        for p, c in self._terms.items():
            vals = c * (1j) ** _popcount(p.x & p.z) * (1 - 2 * (pc[b & p.z] & 1))
            mat = mat + sp.csr_matrix((vals, (b ^ p.x, b)), shape=(d, d))
        return mat


def hamiltonian_coefficients(h_dense, tol: float = 1e-12) -> PauliOperator:
    """Expand a dense Hermitian matrix as ``sum_mu H_mu P_mu`` with ``H_mu = Tr[H P_mu]/d``.

    The identity component is stripped (with a warning when it exceeds 1e-10)
    and coefficients with magnitude below ``tol`` are dropped.
    """
    h = np.asarray(h_dense, dtype=complex)
    d = h.shape[0]
    n = int(round(np.log2(d)))
    if h.shape != (d, d) or 1 << n != d:
        raise ValueError("expected a square matrix of power-of-two size")
    if np.max(np.abs(h - h.conj().T)) > 1e-10:
        raise ValueError("Hamiltonian is not Hermitian")
    c = _pauli_transform(h, n) / d
    if abs(c[0]) > 1e-10:
        warnings.warn(f"stripping identity component {c[0].real:.6g} from Hamiltonian",
                      stacklevel=2)
    terms = [(PauliString.from_index(n, int(i)), c[i].real)
             for i in np.flatnonzero(np.abs(c) > tol) if i != 0]
    return PauliOperator(n, terms)


def energy(state: State, h: PauliOperator) -> float:
    """``Tr[rho H] = sum_mu H_mu rho_mu`` over the stored terms."""
    _check_same(state.n_qubits, h.n_qubits)
    return float(sum(c * pauli_expectation(state, p) for p, c in h.items()))
