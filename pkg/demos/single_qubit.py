"""One qubit under H = h Z: how much work Clifford gates leave on the table.

Run: python demos/single_qubit.py
"""
import numpy as np

from clifford_ergotropy import (
    DensityMatrix,
    PauliOperator,
    clifford_ergotropy_1q,
    clifford_ergotropy_exact,
    min_relative_entropy_1q,
    stabilizer_fidelity_1q,
)
from clifford_ergotropy.models import ergotropy_1q

h = 1.0
ham = PauliOperator(1, [("Z", h)])

# The T state sits on the equator, halfway between the X and Y axes.
t_bloch = np.array([1, 1, 0]) / np.sqrt(2)
print("T state")
print("  ergotropy            ", ergotropy_1q(t_bloch, h))
print("  Clifford ergotropy   ", clifford_ergotropy_1q(t_bloch, h))
print("  stabilizer fidelity  ", stabilizer_fidelity_1q(t_bloch))
print("  min relative entropy ", min_relative_entropy_1q(t_bloch))

# The closed form h*rz + |h|*max(|r_i|) should agree with a search over all 24 Cliffords.
exact = clifford_ergotropy_exact(DensityMatrix.from_bloch(t_bloch), ham)
print("  24-element search    ", exact.clifford_ergotropy)
print("  gap                  ", exact.gap)

# Walk around the equator: the gap vanishes on the stabilizer axes and peaks at the T direction.
print("\nangle/pi   gap      2(1 - F_stab)")
for phi in np.linspace(0, np.pi / 2, 7):
    b = np.array([np.cos(phi), np.sin(phi), 0.0])
    gap = ergotropy_1q(b, h) - clifford_ergotropy_1q(b, h)
    print(f"  {phi / np.pi:5.3f}   {gap:.5f}  {2 * (1 - stabilizer_fidelity_1q(b)):.5f}")

# Mixing shrinks the vector but keeps its direction; the gap scales with the length.
print("\nlength   gap")
for r in (1.0, 0.75, 0.5, 0.25, 0.0):
    b = r * t_bloch
    print(f"  {r:4.2f}   {ergotropy_1q(b, h) - clifford_ergotropy_1q(b, h):.5f}")
