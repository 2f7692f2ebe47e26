"""Model Hamiltonians, closed-form Clifford ergotropies and many-body product-state bounds."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import ellipe

from .bounds import sorted_hamiltonian_weights
from .pauli import MAX_SPECTRUM_QUBITS, PauliOperator, PauliString, PureState

SQRT2 = math.sqrt(2.0)


# --- states -----------------------------------------------------------------


def t_state() -> PureState:
    """``(|0> + e^{i pi/4} |1>) / sqrt(2)``."""
    return PureState(1, np.array([1.0, np.exp(1j * np.pi / 4)]) / SQRT2)


def tt_state() -> PureState:
    return t_state().tensor(t_state())


def t_product_state(n: int) -> PureState:
    psi = t_state()
    for _ in range(n - 1):
        psi = psi.tensor(t_state())
    return psi


# --- Hamiltonians -----------------------------------------------------------


def _site(n: int, ops: dict[int, str]) -> PauliString:
    return PauliString.from_label("".join(ops.get(j, "I") for j in range(n)))


def hamiltonian_2q(g: float, h: float) -> PauliOperator:
    """``-Z Z + g (X_0 + X_1) + h (Z_0 + Z_1)``."""
    return PauliOperator(2, [("ZZ", -1.0), ("XI", g), ("IX", g), ("ZI", h), ("IZ", h)])


def hamiltonian_classical_ising(n: int, h: float) -> PauliOperator:
    """Periodic chain ``-sum_j Z_j Z_{j+1} + h Z_j``."""
    if n < 2:
        raise ValueError("need at least two sites")
    terms = []
    for j in range(n):
        terms.append((_site(n, {j: "Z", (j + 1) % n: "Z"}), -1.0))
        terms.append((_site(n, {j: "Z"}), h))
    return PauliOperator(n, terms)


def hamiltonian_tfim(n: int, g: float) -> PauliOperator:
    """Periodic chain ``-sum_j Z_j Z_{j+1} + g X_j``."""
    if n < 2:
        raise ValueError("need at least two sites")
    terms = []
    for j in range(n):
        terms.append((_site(n, {j: "Z", (j + 1) % n: "Z"}), -1.0))
        terms.append((_site(n, {j: "X"}), g))
    return PauliOperator(n, terms)


# --- closed forms -----------------------------------------------------------


def two_qubit_branch_value(g: float, h: float) -> float:
    """The piecewise-linear part of the two-qubit Clifford ergotropy, in ``s = |g| + |h|``."""
    s = abs(g) + abs(h)
    if s <= 1.0:
        return 1 / SQRT2 + (1 / SQRT2 + 0.5) * s
    return 0.5 + SQRT2 * s


def clifford_ergotropy_2q_analytic(g: float, h: float) -> float:
    """Clifford ergotropy of ``|TT>`` for :func:`hamiltonian_2q`."""
    return SQRT2 * g + two_qubit_branch_value(g, h)


def clifford_ergotropy_1q(bloch, field_h: float = 1.0) -> float:
    """Clifford ergotropy for ``H = h Z``: ``h rz + |h| max(|rx|, |ry|, |rz|)``."""
    b = np.asarray(bloch, dtype=float).reshape(3)
    if np.linalg.norm(b) > 1 + 1e-10:
        raise ValueError("Bloch vector longer than 1")
    return float(field_h * b[2] + abs(field_h) * np.max(np.abs(b)))


def ergotropy_1q(bloch, field_h: float = 1.0) -> float:
    b = np.asarray(bloch, dtype=float).reshape(3)
    return float(field_h * b[2] + abs(field_h) * np.linalg.norm(b))


# --- elliptic integral --------------------------------------------------------


def elliptic_e(x: float) -> float:
    """Complete elliptic integral of the second kind in the modulus ``x``:
    ``int_0^{pi/2} sqrt(1 - x^2 sin^2 k) dk``.

    Thin wrapper over :func:`scipy.special.ellipe`, which takes the parameter ``m = x^2``.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError("modulus must lie in [0, 1]")
    return float(ellipe(x * x))


def tfim_ground_energy_asymptotic(g: float) -> float:
    """Large-N ground energy per site of the periodic TFIM."""
    ag = abs(g)
    return -(1 + ag) * (2 / math.pi) * elliptic_e(2 * math.sqrt(ag) / (1 + ag))


def _crossing_function(g: float) -> float:
    return (2 / math.pi) * elliptic_e(2 * math.sqrt(g) / (1 + g)) - 1 / SQRT2


def tfim_bound_crossings(xtol: float = 1e-12) -> tuple[float, float]:
    """Fields where the T-product TFIM gap bound changes sign (brackets [0.1, 1] and [1, 3])."""
    lo = bisect(_crossing_function, 0.1, 1.0, xtol=xtol)
    hi = bisect(_crossing_function, 1.0, 3.0, xtol=xtol)
    return float(lo), float(hi)


# --- product-state bounds -----------------------------------------------------


def single_site_spectrum(bloch) -> np.ndarray:
    """Sorted ``|rx|, |ry|, |rz|`` of a single-qubit state."""
    return np.sort(np.abs(np.asarray(bloch, dtype=float)))[::-1]


def product_top_coefficients(site_spectra, k: int) -> np.ndarray:
    """Largest ``k`` non-identity absolute Pauli coefficients of a product state.

    Each site contributes ``1`` (identity) or one of its own coefficients; the
    all-identity combination is excluded.  Best-first search over the sorted
    per-site lists.
    """
    lists = [np.concatenate(([1.0], np.sort(np.abs(np.asarray(s, dtype=float)))[::-1]))
             for s in site_spectra]
    n = len(lists)
    out: list[float] = []
    start = (0,) * n
    heap = [(-1.0, start)]
    seen = {start}
    while heap and len(out) < k + 1:
        negv, choice = heapq.heappop(heap)
        out.append(-negv)
        for j in range(n):
            if choice[j] + 1 < len(lists[j]):
                nxt = choice[:j] + (choice[j] + 1,) + choice[j + 1:]
                if nxt in seen:
                    continue
                seen.add(nxt)
                val = math.prod(lists[i][c] for i, c in enumerate(nxt))
                heapq.heappush(heap, (-val, nxt))
    # drop the all-identity value 1.0 (always popped first)
    vals = np.array(out[1:], dtype=float)
    if vals.size < k:
        vals = np.concatenate((vals, np.zeros(k - vals.size)))
    return vals


@dataclass(frozen=True)
class ProductBoundReport:
    n_sites: int
    max_r1_site: float
    ground_energy: float
    ground_energy_asymptotic: bool
    l1_norm: float
    rearrangement_dot: float
    gap_lower_bound_holder: float
    gap_lower_bound: float


def product_state_gap_bound(site_spectra, h: PauliOperator, ground_energy: float,
                            ground_energy_asymptotic: bool = False) -> ProductBoundReport:
    """Lower bounds on the ergotropy gap of a pure product state.

    ``gap_lower_bound_holder = -eps_G - max_j r_j1 ||H||_1`` and the tighter
    ``gap_lower_bound = -eps_G - r . h`` built from the product spectrum.
    """
    site_spectra = [np.asarray(s, dtype=float) for s in site_spectra]
    if len(site_spectra) != h.n_qubits:
        raise ValueError("number of site spectra does not match the Hamiltonian")
    r1 = max(float(np.max(np.abs(s))) if s.size else 0.0 for s in site_spectra)
    w = sorted_hamiltonian_weights(h)
    r = product_top_coefficients(site_spectra, len(w))
    dot = float(np.dot(r, w))
    l1 = h.l1_norm()
    return ProductBoundReport(h.n_qubits, r1, ground_energy, ground_energy_asymptotic, l1,
                              dot, -ground_energy - r1 * l1, -ground_energy - dot)


def classical_ising_ground_energy(n: int, h: float) -> float:
    """Exact ground energy of the periodic classical chain (diagonal, enumerated)."""
    if n > 24:
        # uniform configuration is optimal: every bond and every field term satisfied
        return -n * (1 + abs(h))
    b = np.arange(1 << n)
    spins = 1 - 2 * ((b[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1)
    e = -np.sum(spins * np.roll(spins, -1, axis=1), axis=1) + h * spins.sum(axis=1)
    return float(e.min())


def tfim_ground_energy(n: int, g: float) -> tuple[float, bool]:
    """``(eps_G, asymptotic)``: exact diagonalization for ``n <= 10``, else the elliptic formula."""
    if n <= MAX_SPECTRUM_QUBITS:
        from .ergotropy import ground_energy

        return ground_energy(hamiltonian_tfim(n, g)), False
    return n * tfim_ground_energy_asymptotic(g), True


def t_product_bound(model: str, n: int, field: float) -> ProductBoundReport:
    """Gap bound for ``|T...T>`` under the classical Ising chain or the TFIM."""
    spectra = [single_site_spectrum((1 / SQRT2, 1 / SQRT2, 0.0))] * n
    if model == "classical":
        h = hamiltonian_classical_ising(n, field)
        return product_state_gap_bound(spectra, h, classical_ising_ground_energy(n, field))
    if model == "tfim":
        h = hamiltonian_tfim(n, field)
        eg, asym = tfim_ground_energy(n, field)
        return product_state_gap_bound(spectra, h, eg, asym)
    raise ValueError(f"unknown model {model!r}; expected 'tfim' or 'classical'")


def tfim_t_product_bound_asymptotic(g: float) -> float:
    """Per-site large-N gap bound for ``|T...T>`` under the TFIM."""
    ag = abs(g)
    return (1 + ag) * ((2 / math.pi) * elliptic_e(2 * math.sqrt(ag) / (1 + ag)) - 1 / SQRT2)
