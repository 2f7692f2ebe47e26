"""Upper bounds on Clifford ergotropy and filtered stabilizer Renyi entropies."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import (
    PauliOperator,
    PauliSpectrum,
    PureState,
    State,
    _check_same,
    energy,
    pauli_spectrum,
)

SRE_ORDERS = (0.5, 2.0, 3.0, np.inf)


def l1_norm(h: PauliOperator) -> float:
    """Sum of absolute Pauli coefficients of ``h``."""
    return h.l1_norm()


def sorted_hamiltonian_weights(h: PauliOperator) -> np.ndarray:
    """``|H_l|`` sorted nonincreasingly (ties keep label order)."""
    items = sorted(h.items(), key=lambda kv: kv[0].index)
    w = np.abs(np.array([c for _, c in items], dtype=float))
    return w[np.argsort(-w, kind="stable")]


def rearrangement_dot(spectrum: PauliSpectrum | np.ndarray, h: PauliOperator) -> float:
    """``r . h``: largest state coefficients paired with largest Hamiltonian weights."""
    r = spectrum.r if isinstance(spectrum, PauliSpectrum) else np.asarray(spectrum)
    w = sorted_hamiltonian_weights(h)
    k = min(len(w), len(r))
    return float(np.dot(r[:k], w[:k]))


def rearrangement_bound(state: State, h: PauliOperator,
                        spectrum: PauliSpectrum | None = None) -> float:
    """``E(rho) + r . h``, the bound from relaxing to arbitrary coefficient permutations."""
    _check_same(state.n_qubits, h.n_qubits)
    spectrum = pauli_spectrum(state) if spectrum is None else spectrum
    return energy(state, h) + rearrangement_dot(spectrum, h)


def holder_bound(state: State, h: PauliOperator,
                 spectrum: PauliSpectrum | None = None) -> float:
    """``E(rho) + r_1 ||H||_1``."""
    _check_same(state.n_qubits, h.n_qubits)
    spectrum = pauli_spectrum(state) if spectrum is None else spectrum
    return energy(state, h) + spectrum.r1 * h.l1_norm()


def _pure_spectrum(state: State, spectrum: PauliSpectrum | None) -> PauliSpectrum:
    if not isinstance(state, PureState):
        raise ValueError("filtered SRE is defined for pure states only")
    spectrum = pauli_spectrum(state) if spectrum is None else spectrum
    d = state.dim
    total = float(np.sum(spectrum.r ** 2)) / (d - 1)
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"filtered spectrum not normalized (sum = {total:.12g})")
    return spectrum


def m_infinity(state: State, spectrum: PauliSpectrum | None = None) -> float:
    """Infinite-order filtered SRE, ``-ln r_1^2``."""
    spectrum = _pure_spectrum(state, spectrum)
    r1 = spectrum.r1
    if r1 <= 0.0:
        raise ValueError("r_1 = 0 is impossible for a normalized pure state")
    return float(-2.0 * np.log(r1))


def filtered_sre(state: State, alpha: float, spectrum: PauliSpectrum | None = None) -> float:
    """Filtered stabilizer Renyi entropy ``ln(sum r^{2 alpha} / (d-1)) / (1 - alpha)``.

    ``alpha = inf`` returns :func:`m_infinity`.
    """
    if alpha <= 0 or alpha == 1:
        raise ValueError("alpha must be positive and different from 1")
    if np.isinf(alpha):
        return m_infinity(state, spectrum)
    spectrum = _pure_spectrum(state, spectrum)
    d = state.dim
    r = spectrum.r
    # factor out r_1 to stay finite for large alpha
    r1 = r[0]
    s = np.sum((r[r > 0] / r1) ** (2 * alpha))
    log_sum = 2 * alpha * np.log(r1) + np.log(s) - np.log(d - 1)
    return float(max(log_sum / (1 - alpha), 0.0))


def sre_bound(state: State, h: PauliOperator, spectrum: PauliSpectrum | None = None) -> float:
    """``E(rho) + exp(-M_inf / 2) ||H||_1`` (pure states)."""
    m = m_infinity(state, spectrum)
    return energy(state, h) + np.exp(-m / 2) * h.l1_norm()


@dataclass(frozen=True)
class BoundReport:
    initial_energy: float
    bound_rearrangement: float
    bound_holder: float
    bound_sre: float | None
    l1_norm: float
    r1: float
    m_infinity: float | None
    rearrangement_dot: float
    clifford_ergotropy: float | None = None
    clifford_exact: bool | None = None


def bound_report(state: State, h: PauliOperator, clifford_ergotropy: float | None = None,
                 clifford_exact: bool | None = None) -> BoundReport:
    """All three bounds from a single spectrum computation.

    The magic-based quantities are ``None`` for mixed states.
    """
    spectrum = pauli_spectrum(state)
    e0 = energy(state, h)
    dot = rearrangement_dot(spectrum, h)
    l1 = h.l1_norm()
    m_inf = sre = None
    if isinstance(state, PureState):
        m_inf = m_infinity(state, spectrum)
        sre = e0 + np.exp(-m_inf / 2) * l1
    return BoundReport(e0, e0 + dot, e0 + spectrum.r1 * l1, sre, l1, spectrum.r1, m_inf, dot,
                       clifford_ergotropy, clifford_exact)


# --- single qubit -----------------------------------------------------------


def _bloch(bloch) -> np.ndarray:
    b = np.asarray(bloch, dtype=float).reshape(3)
    if np.linalg.norm(b) > 1 + 1e-10:
        raise ValueError("Bloch vector longer than 1")
    return b


def stabilizer_fidelity_1q(bloch) -> float:
    """``(1 + max(|rx|, |ry|, |rz|)) / 2``."""
    return float((1 + np.max(np.abs(_bloch(bloch)))) / 2)


def min_relative_entropy_1q(bloch) -> float:
    """Min-relative entropy of magic, ``-ln F_STAB``."""
    return float(-np.log(stabilizer_fidelity_1q(bloch)))


def ergotropy_gap_1q(bloch, field_h: float = 1.0) -> float:
    """Gap for ``H = h Z``: ``|h| (1 + |r| - 2 F_STAB)``; for pure states ``2|h| (1 - F_STAB)``."""
    b = _bloch(bloch)
    return float(abs(field_h) * (1 + np.linalg.norm(b) - 2 * stabilizer_fidelity_1q(b)))
