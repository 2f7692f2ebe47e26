"""Standard ergotropy, Clifford ergotropy and the ergotropy gap.

Energy on the Clifford orbit
----------------------------
For a tableau ``t`` realised by ``U`` the rotated state is ``U^dagger rho U`` and

    E_t = sum_l H_l * Tr[rho t(P_l)],

which only touches the ``K`` Hamiltonian terms.  Minimizing over every
tableau gives the orbit minimum; the sign bits of the tableau enter as
``(-1)^{popcount(sigma & generators(P_l))}``, so the ``4**n`` sign choices of
one symplectic matrix are handled as a single small matrix product.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .clifford import (
    CliffordTableau,
    clifford_group_order,
    cnot,
    compose,
    conjugate,
    embed_tableau,
    enumerate_cliffords,
    random_clifford,
    symplectic_table,
)
from .pauli import (
    MAX_SPECTRUM_QUBITS,
    DensityMatrix,
    PauliOperator,
    PauliString,
    PureState,
    State,
    _check_same,
    _popcount_table,
    as_density,
    energy,
    pauli_coefficients,
    pauli_expectation,
)

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10


def hermitian_eigh(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition with a residual check ``||A v - lambda v|| < 1e-10 * max(1, ||A||)``."""
    mat = np.asarray(mat, dtype=complex)
    if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
        raise ValueError("matrix is not Hermitian")
    vals, vecs = np.linalg.eigh(mat)
    scale = max(1.0, float(np.max(np.abs(vals), initial=0.0)))
    resid = np.linalg.norm(mat @ vecs - vecs * vals, axis=0)
    if resid.size and resid.max() > RESIDUAL_TOL * scale:
        raise RuntimeError(f"eigensolver residual {resid.max():.3g} too large")
    return vals, vecs


def ground_energy(h: PauliOperator) -> float:
    """Smallest eigenvalue of ``h`` by dense diagonalization (N <= 10)."""
    if h.n_qubits > MAX_SPECTRUM_QUBITS:
        raise ValueError("dense diagonalization limited to N <= 10")
    if len(h) == 0:
        return 0.0
    return float(hermitian_eigh(h.to_matrix())[0][0])


@dataclass(frozen=True)
class ErgotropyResult:
    initial_energy: float
    passive_energy: float
    ergotropy: float
    passive_populations: list[tuple[float, float]]


@dataclass(frozen=True)
class CliffordErgotropyResult:
    initial_energy: float
    orbit_min_energy: float
    clifford_ergotropy: float
    optimal_tableau: CliffordTableau
    exact: bool
    ergotropy: float | None = None
    gap: float | None = None


def standard_ergotropy(rho: State, h: PauliOperator) -> ErgotropyResult:
    """Ergotropy via the passive state: descending populations on ascending levels."""
    rho = as_density(rho)
    _check_same(rho.n_qubits, h.n_qubits)
    if rho.n_qubits > MAX_SPECTRUM_QUBITS:
        raise ValueError("dense ergotropy limited to N <= 10")
    p, _ = hermitian_eigh(rho.matrix)
    if p.min() < -1e-10:
        raise ValueError("state has negative eigenvalues")
    eps, _ = hermitian_eigh(h.to_matrix())
    p = p[np.argsort(-p, kind="stable")]
    eps = np.sort(eps, kind="stable")
    e0 = energy(rho, h)
    passive = float(np.dot(p, eps))
    return ErgotropyResult(e0, passive, e0 - passive,
                           [(float(a), float(b)) for a, b in zip(p, eps)])


def ergotropy_pure(state: PureState, h: PauliOperator) -> float:
    """``E(psi) - eps_G``."""
    return energy(state, h) - ground_energy(h)


def passive_state(rho: State, h: PauliOperator) -> DensityMatrix:
    """Passive state ``sum_k p_k |eps_k><eps_k|``."""
    rho = as_density(rho)
    p, _ = hermitian_eigh(rho.matrix)
    p = np.clip(p[np.argsort(-p, kind="stable")], 0.0, None)
    _, vecs = hermitian_eigh(h.to_matrix())
    mat = (vecs * (p / p.sum())) @ vecs.conj().T
    return DensityMatrix(rho.n_qubits, 0.5 * (mat + mat.conj().T))


# --- orbit energies ---------------------------------------------------------


def orbit_energy(state: State, h: PauliOperator, t: CliffordTableau) -> float:
    """Energy of the state rotated by tableau ``t``: ``sum_l H_l Tr[rho t(P_l)]``."""
    _check_same(state.n_qubits, h.n_qubits)
    _check_same(state.n_qubits, t.n_qubits)
    return float(sum(c * pauli_expectation(state, conjugate(t, p)) for p, c in h.items()))


def _term_arrays(h: PauliOperator):
    terms = list(h.items())
    xs = np.array([p.x for p, _ in terms], dtype=np.int64)
    zs = np.array([p.z for p, _ in terms], dtype=np.int64)
    cs = np.array([c for _, c in terms], dtype=float)
    return xs, zs, cs


def _generator_mask(n: int, x: int, z: int) -> int:
    """Sign-bit mask (MSB = X_0) of the generators appearing in ``P(x, z)``."""
    mask = 0
    for j in range(n):
        bit = 1 << (n - 1 - j)
        if x & bit:
            mask |= 1 << (2 * n - 1 - 2 * j)
        if z & bit:
            mask |= 1 << (2 * n - 2 - 2 * j)
    return mask


def _symplectic_images(sym: np.ndarray, n: int, x: int, z: int):
    """Label index and sign of the image of ``P(x, z)`` under every row of ``sym``
    (generator images with + signs)."""
    pc = _popcount_table(1 << n)
    low = (1 << n) - 1
    k = np.full(sym.shape[0], pc[x & z], dtype=np.int64)
    cx = np.zeros(sym.shape[0], dtype=np.int64)
    cz = np.zeros(sym.shape[0], dtype=np.int64)
    for part, offset in ((x, 0), (z, 1)):
        for j in range(n):
            if (part >> (n - 1 - j)) & 1:
                img = sym[:, 2 * j + offset]
                ix, iz = img >> n, img & low
                x3, z3 = cx ^ ix, cz ^ iz
                k += pc[cx & cz] + pc[ix & iz] + 2 * pc[cz & ix] - pc[x3 & z3]
                cx, cz = x3, z3
    k %= 4
    if np.any((k != 0) & (k != 2)):
        raise RuntimeError("non-Hermitian image in symplectic table")
    return (cx << n) | cz, 1 - k


def _exact_min_range(coeffs: np.ndarray, h: PauliOperator, sym: np.ndarray,
                     start: int, stop: int, chunk: int = 1 << 15) -> tuple[float, int]:
    """Minimum orbit energy and its canonical tableau index over ``[start, stop)``."""
    n = h.n_qubits
    nsig = 4 ** n
    xs, zs, cs = _term_arrays(h)
    sig = np.arange(nsig, dtype=np.int64)
    pc = _popcount_table(nsig)
    par = [1.0 - 2.0 * (pc[sig & _generator_mask(n, int(x), int(z))] & 1)
           for x, z in zip(xs, zs)]
    best = (np.inf, -1)
    s_lo, s_hi = start // nsig, -(-stop // nsig)
    for c0 in range(s_lo, s_hi, chunk):
        rows = sym[c0:min(c0 + chunk, s_hi)]
        e = np.zeros((rows.shape[0], nsig))
        for ell in range(len(cs)):
            idx, sgn = _symplectic_images(rows, n, int(xs[ell]), int(zs[ell]))
            w = cs[ell] * sgn * coeffs[idx]
            e += w[:, None] * par[ell][None, :]
        flat = e.reshape(-1)
        base = c0 * nsig
        lo = max(start - base, 0)
        hi = min(stop - base, flat.size)
        if hi <= lo:
            continue
        k = lo + int(np.argmin(flat[lo:hi]))
        if flat[k] < best[0]:
            best = (float(flat[k]), base + k)
        if n >= 3:
            log.info("orbit scan: %d / %d symplectic rows", min(c0 + chunk, s_hi), sym.shape[0])
    return best


def clifford_min_energy_exact(state: State, h: PauliOperator, allow_large: bool = False,
                              workers: int = 1,
                              index_range: tuple[int, int] | None = None
                              ) -> tuple[float, CliffordTableau]:
    """Exhaustive minimum of the energy over the Clifford orbit of ``state``.

    ``n <= 2`` by default; ``n = 3`` needs ``allow_large=True``.  Ties resolve
    to the smallest canonical index, independently of ``workers``.
    """
    _check_same(state.n_qubits, h.n_qubits)
    n = state.n_qubits
    if n > 3 or (n == 3 and not allow_large):
        raise ValueError(f"exact orbit minimization unavailable for N={n}; "
                         "use clifford_min_energy_heuristic")
    sym = symplectic_table(n, allow_large=True)
    total = clifford_group_order(n)
    start, stop = index_range if index_range is not None else (0, total)
    if len(h) == 0:
        return 0.0, CliffordTableau.from_index(n, start)
    coeffs = pauli_coefficients(state)
    if workers <= 1:
        e, k = _exact_min_range(coeffs, h, sym, start, stop)
    else:
        nsig = 4 ** n
        rows = -(-(stop - start) // nsig)
        step = max(1, -(-rows // workers)) * nsig
        bounds = [(a, min(a + step, stop)) for a in range(start, stop, step)]
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda ab: _exact_min_range(coeffs, h, sym, *ab), bounds))
        e, k = min(parts)
    return e, CliffordTableau.from_index(n, k)


def orbit_energies_all(state: State, h: PauliOperator) -> np.ndarray:
    """Orbit energy of every tableau in canonical order (n <= 2)."""
    n = state.n_qubits
    if n > 2:
        raise ValueError("full orbit table only for N <= 2")
    coeffs = pauli_coefficients(state)
    sym = symplectic_table(n)
    nsig = 4 ** n
    xs, zs, cs = _term_arrays(h)
    sig = np.arange(nsig, dtype=np.int64)
    pc = _popcount_table(nsig)
    e = np.zeros((sym.shape[0], nsig))
    for ell in range(len(cs)):
        idx, sgn = _symplectic_images(sym, n, int(xs[ell]), int(zs[ell]))
        par = 1.0 - 2.0 * (pc[sig & _generator_mask(n, int(xs[ell]), int(zs[ell]))] & 1)
        e += (cs[ell] * sgn * coeffs[idx])[:, None] * par[None, :]
    return e.reshape(-1)


# --- heuristic search -------------------------------------------------------


def _local_tables(t_local: CliffordTableau):
    """Code -> (new code, sign) for every local Pauli under a small tableau."""
    m = t_local.n_qubits
    new = np.zeros(4 ** m, dtype=np.int64)
    sgn = np.ones(4 ** m, dtype=np.int64)
    for code in range(4 ** m):
        img = conjugate(t_local, PauliString.from_index(m, code))
        new[code], sgn[code] = img.index, img.sign
    return new, sgn


class _MoveSet:
    """Single-qubit frame actions on every site plus CNOTs on ordered pairs."""

    def __init__(self, n: int):
        self.n = n
        singles = list(enumerate_cliffords(1))
        tabs = [_local_tables(t) for t in singles]
        self.single_tabs = singles
        self.s_new = np.stack([a for a, _ in tabs])         # (24, 4) local codes x,z
        self.s_sgn = np.stack([b for _, b in tabs])
        self.pairs = [(c, t) for c in range(n) for t in range(n) if c != t]
        self.c_new, self.c_sgn = _local_tables(cnot(2, 0, 1))
        self.n_single = n * len(singles)

    def tableau(self, k: int) -> CliffordTableau:
        if k < self.n_single:
            q, a = divmod(k, len(self.single_tabs))
            return embed_tableau(self.single_tabs[a], self.n, (q,))
        c, t = self.pairs[k - self.n_single]
        return cnot(self.n, c, t)

    @property
    def size(self) -> int:
        return self.n_single + len(self.pairs)

    def apply_all(self, X, Z, S):
        """Term images under every move.

        ``X, Z, S`` have shape ``(R, K)`` (R walkers, K terms); the result has
        shape ``(R, M, K)`` with moves ordered as in :meth:`tableau`.
        """
        n = self.n
        R, K = X.shape
        sh = (n - 1 - np.arange(n))[None, :, None]                          # (1, n, 1)
        code = (((X[:, None, :] >> sh) & 1) << 1) | ((Z[:, None, :] >> sh) & 1)  # (R, n, K)
        new = np.moveaxis(self.s_new[:, code], 0, 2)                        # (R, n, 24, K)
        sg = np.moveaxis(self.s_sgn[:, code], 0, 2)
        sh = sh[..., None]                                                  # (1, n, 1, 1)
        keep = ~(1 << sh)
        Xb, Zb = X[:, None, None, :], Z[:, None, None, :]
        nx = ((Xb & keep) | (((new >> 1) & 1) << sh)).reshape(R, -1, K)
        nz = ((Zb & keep) | ((new & 1) << sh)).reshape(R, -1, K)
        ns = (S[:, None, None, :] * sg).reshape(R, -1, K)
        if not self.pairs:
            return nx, nz, ns
        cs = np.array([n - 1 - c for c, _ in self.pairs])[None, :, None]   # (1, P, 1)
        ts = np.array([n - 1 - t for _, t in self.pairs])[None, :, None]
        Xp, Zp = X[:, None, :], Z[:, None, :]
        # local two-qubit label index (x_c x_t z_c z_t), control most significant
        code2 = ((((Xp >> cs) & 1) << 3) | (((Xp >> ts) & 1) << 2)
                 | (((Zp >> cs) & 1) << 1) | ((Zp >> ts) & 1))
        new2 = self.c_new[code2]
        clear = ~((1 << cs) | (1 << ts))
        cx = (Xp & clear) | (((new2 >> 3) & 1) << cs) | (((new2 >> 2) & 1) << ts)
        cz = (Zp & clear) | (((new2 >> 1) & 1) << cs) | ((new2 & 1) << ts)
        csg = S[:, None, :] * self.c_sgn[code2]
        return (np.concatenate((nx, cx), axis=1), np.concatenate((nz, cz), axis=1),
                np.concatenate((ns, csg), axis=1))


def _walk_block(coeffs, hc, n, X, Z, S, kicks, steps, moves):
    """Advance a block of walkers in lockstep; returns best energies and move paths.

    Each step a walker takes its steepest improving move.  A walker with no
    improving move first returns to the best point of its own walk, and once
    there takes the random move selected by its pre-drawn ``kicks`` value.
    """
    R = X.shape[0]
    cur = np.sum(hc * S * coeffs[(X << n) | Z], axis=1)
    best = cur.copy()
    bX, bZ, bS = X.copy(), Z.copy(), S.copy()
    path = [[] for _ in range(R)]
    best_path = [[] for _ in range(R)]
    rows = np.arange(R)
    for step in range(steps):
        mx, mz, ms = moves.apply_all(X, Z, S)
        es = np.sum(hc * ms * coeffs[(mx << n) | mz], axis=2)          # (R, M)
        k = np.argmin(es, axis=1)
        improve = es[rows, k] < cur - 1e-12
        at_best = cur <= best
        kick = ~improve & at_best
        k = np.where(kick, (kicks[:, step] * es.shape[1]).astype(np.int64), k)
        move = improve | kick
        for r in np.flatnonzero(move):
            path[r].append(int(k[r]))
        for r in np.flatnonzero(~move):
            path[r] = list(best_path[r])
        X = np.where(move[:, None], mx[rows, k], bX)
        Z = np.where(move[:, None], mz[rows, k], bZ)
        S = np.where(move[:, None], ms[rows, k], bS)
        cur = np.where(move, es[rows, k], best)
        better = cur < best - 1e-12
        for r in np.flatnonzero(better):
            best_path[r] = list(path[r])
        best = np.where(better, cur, best)
        bX = np.where(better[:, None], X, bX)
        bZ = np.where(better[:, None], Z, bZ)
        bS = np.where(better[:, None], S, bS)
    return best, best_path


def clifford_min_energy_heuristic(state: State, h: PauliOperator, restarts: int = 50,
                                  steps: int = 200, seed=None
                                  ) -> tuple[float, CliffordTableau]:
    """Random restarts plus steepest descent over local Clifford moves.

    Each restart starts from a uniformly random tableau and spends up to
    ``steps`` moves: the steepest improving move when one exists, otherwise a
    return to the best point of that restart followed by one random move
    (iterated local search).  The result is the energy of an actual orbit
    element, hence an upper bound on the orbit minimum.  Restart ``r`` always
    draws from the ``r``-th child of ``SeedSequence(seed)`` and its walk does
    not depend on the other restarts, so enlarging either budget never raises
    the returned energy.
    """
    _check_same(state.n_qubits, h.n_qubits)
    if restarts < 1 or steps < 0:
        raise ValueError("heuristic budget must have at least one restart")
    n = state.n_qubits
    if len(h) == 0:
        return 0.0, CliffordTableau.identity(n)
    coeffs = pauli_coefficients(state)
    moves = _MoveSet(n)
    hx, hz, hc = _term_arrays(h)
    terms = [PauliString(n, int(x), int(z)) for x, z in zip(hx, hz)]
    starts, kicks = [], []
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        starts.append(random_clifford(n, rng))
        kicks.append(rng.random(steps))
    # bound the (R, M, K) work arrays to a few million entries
    block = max(1, 2_000_000 // (moves.size * len(terms)))
    best_e, best_r, best_moves = np.inf, -1, []
    for b0 in range(0, restarts, block):
        tabs = starts[b0:b0 + block]
        imgs = [[conjugate(t, p) for p in terms] for t in tabs]
        X = np.array([[p.x for p in row] for row in imgs], dtype=np.int64)
        Z = np.array([[p.z for p in row] for row in imgs], dtype=np.int64)
        S = np.array([[p.sign for p in row] for row in imgs], dtype=np.int64)
        energies, paths = _walk_block(coeffs, hc, n, X, Z, S,
                                      np.array(kicks[b0:b0 + block]).reshape(len(tabs), steps),
                                      steps, moves)
        r = int(np.argmin(energies))
        if energies[r] < best_e:
            best_e, best_r, best_moves = float(energies[r]), b0 + r, paths[r]
    tab = starts[best_r]
    for k in best_moves:
        tab = compose(moves.tableau(k), tab)
    return best_e, tab


# --- composite quantities ---------------------------------------------------


def clifford_ergotropy_exact(state: State, h: PauliOperator, allow_large: bool = False,
                             with_gap: bool = True, workers: int = 1) -> CliffordErgotropyResult:
    e0 = energy(state, h)
    emin, tab = clifford_min_energy_exact(state, h, allow_large=allow_large, workers=workers)
    erg = gap = None
    if with_gap:
        erg = standard_ergotropy(state, h).ergotropy
        gap = erg - (e0 - emin)
    return CliffordErgotropyResult(e0, emin, e0 - emin, tab, True, erg, gap)


def clifford_ergotropy_heuristic(state: State, h: PauliOperator, restarts: int = 50,
                                 steps: int = 200, seed=None) -> CliffordErgotropyResult:
    """Lower estimate of the Clifford ergotropy (the orbit minimum is only upper-bounded)."""
    e0 = energy(state, h)
    emin, tab = clifford_min_energy_heuristic(state, h, restarts, steps, seed)
    return CliffordErgotropyResult(e0, emin, e0 - emin, tab, False)


def ergotropy_gap(state: State, h: PauliOperator, allow_large: bool = False) -> float:
    """Unrestricted minus Clifford ergotropy (exact orbit minimization)."""
    res = clifford_ergotropy_exact(state, h, allow_large=allow_large)
    return res.gap


def clifford_max_energy_exact(state: State, h: PauliOperator, allow_large: bool = False
                              ) -> tuple[float, CliffordTableau]:
    """Largest energy on the Clifford orbit (charging), via the negated observable."""
    e, t = clifford_min_energy_exact(state, -h, allow_large=allow_large)
    return -e, t
