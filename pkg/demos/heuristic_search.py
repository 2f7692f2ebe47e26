"""Heuristic Clifford search: how close does it get to the exhaustive minimum?

Run: python demos/heuristic_search.py
"""
import time

import numpy as np

from clifford_ergotropy import hamiltonian_tfim, orbit_energy
from clifford_ergotropy.ergotropy import clifford_min_energy_exact, clifford_min_energy_heuristic
from clifford_ergotropy.experiments import haar_state
from clifford_ergotropy.models import t_product_state

# Three qubits is the largest size with an exhaustive answer (92,897,280 actions).
psi, h = t_product_state(3), hamiltonian_tfim(3, 0.5)
t0 = time.perf_counter()
exact, _ = clifford_min_energy_exact(psi, h, allow_large=True, workers=4)
print(f"N = 3 exhaustive minimum {exact:.10f} ({time.perf_counter() - t0:.1f} s)")

# More budget never hurts for a fixed seed.
for restarts, steps in [(1, 10), (5, 50), (20, 100), (50, 200)]:
    e, tab = clifford_min_energy_heuristic(psi, h, restarts, steps, seed=0)
    print(f"  {restarts:3d} x {steps:3d}: {e:.10f}  (tableau check {orbit_energy(psi, h, tab):.10f})")

# A random three-qubit state is harder than the symmetric product state.
rng = np.random.default_rng(1)
psi = haar_state(3, rng)
exact, _ = clifford_min_energy_exact(psi, h, allow_large=True, workers=4)
heur, _ = clifford_min_energy_heuristic(psi, h, seed=0)
print(f"\nrandom state: exhaustive {exact:.8f}, heuristic {heur:.8f}")

# Beyond three qubits only the heuristic is available.
for n in (4, 6, 8, 10):
    psi, h = t_product_state(n), hamiltonian_tfim(n, 0.5)
    t0 = time.perf_counter()
    e, _ = clifford_min_energy_heuristic(psi, h, seed=0)
    print(f"N = {n:2d}: orbit energy <= {e:.6f}  ({time.perf_counter() - t0:.1f} s)")
