import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from clifford_ergotropy.bounds import rearrangement_dot
from clifford_ergotropy.clifford import enumerate_cliffords
from clifford_ergotropy.ergotropy import clifford_min_energy_exact, ground_energy, orbit_energy
from clifford_ergotropy.models import (
    classical_ising_ground_energy,
    clifford_ergotropy_1q,
    clifford_ergotropy_2q_analytic,
    elliptic_e,
    ergotropy_1q,
    hamiltonian_2q,
    hamiltonian_classical_ising,
    hamiltonian_tfim,
    product_state_gap_bound,
    product_top_coefficients,
    single_site_spectrum,
    t_product_bound,
    t_product_state,
    t_state,
    tfim_bound_crossings,
    tfim_ground_energy,
    tfim_ground_energy_asymptotic,
    tfim_t_product_bound_asymptotic,
    tt_state,
)
from clifford_ergotropy.pauli import DensityMatrix, PauliOperator, PureState, energy, pauli_spectrum

SQ2 = math.sqrt(2)


def test_t_state_bloch_vector():
    rho = t_state().projector().matrix
    assert abs(2 * rho[1, 0].real - 1 / SQ2) < 1e-15
    assert abs(2 * rho[1, 0].imag - 1 / SQ2) < 1e-15
    assert t_product_state(3).n_qubits == 3


def test_model_hamiltonians():
    h = hamiltonian_2q(0.3, 0.5)
    assert h.coefficient("ZZ") == -1 and h.coefficient("XI") == 0.3 and h.coefficient("IZ") == 0.5
    tf = hamiltonian_tfim(4, 0.7)
    assert len(tf) == 8 and abs(tf.l1_norm() - 4 * 1.7) < 1e-12
    # n = 2 merges the two periodic bonds
    assert hamiltonian_classical_ising(2, 0.5).coefficient("ZZ") == -2
    with pytest.raises(ValueError):
        hamiltonian_tfim(1, 0.5)


@pytest.mark.parametrize("g, h", [(0.0, 0.0), (1.0, 0.0), (0.3, 0.5), (-0.7, 0.5),
                                  (-1.6, -0.2), (1.9, 0.5), (0.5, 0.5)])
def test_two_qubit_closed_form_matches_brute_force(g, h):
    psi, ham = tt_state(), hamiltonian_2q(g, h)
    e_min, _ = clifford_min_energy_exact(psi, ham)
    assert abs(energy(psi, ham) - e_min - clifford_ergotropy_2q_analytic(g, h)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_two_qubit_closed_form_property(g, h):
    psi, ham = tt_state(), hamiltonian_2q(g, h)
    e_min, _ = clifford_min_energy_exact(psi, ham)
    assert abs(energy(psi, ham) - e_min - clifford_ergotropy_2q_analytic(g, h)) < 1e-11


@settings(max_examples=60, deadline=None)
@given(st.floats(0, 1), st.floats(0, 2 * math.pi), st.floats(0, math.pi), st.floats(-3, 3))
def test_single_qubit_closed_form(radius, phi, theta, field):
    b = radius * np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi),
                           math.cos(theta)])
    rho = DensityMatrix.from_bloch(b)
    ham = PauliOperator(1, [("Z", field)]) if field != 0 else PauliOperator(1)
    brute = max(energy(rho, ham) - orbit_energy(rho, ham, t) for t in enumerate_cliffords(1))
    assert abs(clifford_ergotropy_1q(b, field) - brute) < 1e-12
    eps = abs(field)
    assert abs(ergotropy_1q(b, field) - (field * b[2] + eps * np.linalg.norm(b))) < 1e-12


@pytest.mark.parametrize("x", [0.0, 0.1, 0.5, 0.9, 0.99, 0.9999, 0.99999, 1 - 1e-9, 1.0])
def test_elliptic_e_against_mpmath(x):
    with mpmath.workdps(40):
        ref = float(mpmath.ellipe(mpmath.mpf(x) ** 2))
    assert abs(elliptic_e(x) - ref) < 1e-14


@pytest.mark.parametrize("x", [0.2, 0.7, 0.95])
def test_elliptic_e_against_quadrature(x):
    ref, _ = quad(lambda t: math.sqrt(1 - x * x * math.sin(t) ** 2), 0, math.pi / 2,
                  epsabs=1e-13, epsrel=1e-13)
    assert abs(elliptic_e(x) - ref) < 1e-12


def test_elliptic_e_endpoints_and_domain():
    assert abs(elliptic_e(0) - math.pi / 2) < 1e-15
    assert elliptic_e(1) == 1.0
    assert abs(elliptic_e(0.5) - 1.4674622093394272) < 1e-15
    with pytest.raises(ValueError):
        elliptic_e(1.5)


def test_tfim_asymptotics():
    assert abs(tfim_ground_energy_asymptotic(1.0) + 4 / math.pi) < 1e-12
    assert abs(tfim_ground_energy_asymptotic(0.0) + 1.0) < 1e-15
    # away from criticality the finite periodic chain is exponentially close
    for g in (0.3, 2.5):
        e10, asym = tfim_ground_energy(10, g)
        assert not asym
        assert abs(e10 / 10 - tfim_ground_energy_asymptotic(g)) < 1e-5
    e, asym = tfim_ground_energy(40, 0.5)
    assert asym and abs(e - 40 * tfim_ground_energy_asymptotic(0.5)) < 1e-12


def test_tfim_crossings():
    lo, hi = tfim_bound_crossings()
    assert abs(lo - 0.506) < 0.002 and abs(hi - 1.975) < 0.002
    assert abs(tfim_t_product_bound_asymptotic(lo)) < 1e-10
    assert tfim_t_product_bound_asymptotic(1.0) < 0 < tfim_t_product_bound_asymptotic(0.2)


def test_product_top_coefficients_match_full_spectrum(rng):
    blochs = []
    for _ in range(3):
        v = rng.standard_normal(3)
        blochs.append(v / np.linalg.norm(v))
    psi = None
    for b in blochs:
        theta, phi = math.acos(b[2]), math.atan2(b[1], b[0])
        site = PureState(1, np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)]))
        psi = site if psi is None else psi.tensor(site)
    full = pauli_spectrum(psi).r
    top = product_top_coefficients([single_site_spectrum(b) for b in blochs], 20)
    np.testing.assert_allclose(top, full[:20], atol=1e-12)
    np.testing.assert_allclose(product_top_coefficients([[0.5]], 3), [0.5, 0, 0])


@pytest.mark.parametrize("n, h", [(3, 0.0), (4, 0.5), (5, -1.2)])
def test_classical_ising_bound(n, h):
    rep = t_product_bound("classical", n, h)
    assert abs(rep.gap_lower_bound - n * (1 - 1 / SQ2) * (1 + abs(h))) < 1e-12
    assert abs(classical_ising_ground_energy(n, h) - ground_energy(hamiltonian_classical_ising(n, h))) < 1e-12


def test_tfim_product_bound_against_dense(rng):
    n, g = 4, 0.5
    psi, ham = t_product_state(n), hamiltonian_tfim(n, g)
    rep = t_product_bound("tfim", n, g)
    dense = -ground_energy(ham) - rearrangement_dot(pauli_spectrum(psi), ham)
    assert abs(rep.gap_lower_bound - dense) < 1e-12
    assert rep.gap_lower_bound >= rep.gap_lower_bound_holder - 1e-12
    with pytest.raises(ValueError):
        t_product_bound("heisenberg", 4, 0.5)
    with pytest.raises(ValueError):
        product_state_gap_bound([[1.0]], ham, -1.0)
