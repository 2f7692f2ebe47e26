"""Work extraction restricted to Clifford operations on N-qubit systems."""
from .bounds import (
    BoundReport,
    bound_report,
    ergotropy_gap_1q,
    filtered_sre,
    holder_bound,
    l1_norm,
    m_infinity,
    min_relative_entropy_1q,
    rearrangement_bound,
    sre_bound,
    stabilizer_fidelity_1q,
)
from .clifford import (
    CliffordTableau,
    cnot,
    compose,
    conjugate,
    enumerate_cliffords,
    hadamard,
    phase_gate,
    random_clifford,
    symplectic_check,
    tableau_unitary,
)
from .ergotropy import (
    CliffordErgotropyResult,
    ErgotropyResult,
    clifford_ergotropy_exact,
    clifford_ergotropy_heuristic,
    clifford_min_energy_exact,
    clifford_min_energy_heuristic,
    ergotropy_gap,
    ergotropy_pure,
    orbit_energy,
    standard_ergotropy,
)
from .models import (
    clifford_ergotropy_1q,
    clifford_ergotropy_2q_analytic,
    elliptic_e,
    hamiltonian_2q,
    hamiltonian_classical_ising,
    hamiltonian_tfim,
    product_state_gap_bound,
    t_state,
    tfim_bound_crossings,
    tfim_ground_energy_asymptotic,
    tt_state,
)
from .pauli import (
    DensityMatrix,
    PauliOperator,
    PauliSpectrum,
    PauliString,
    PureState,
    energy,
    hamiltonian_coefficients,
    pauli_apply,
    pauli_commutes,
    pauli_expectation,
    pauli_spectrum,
)

__version__ = "0.1.0"
