"""Dense state-vector and density-matrix helpers.

States are plain numpy arrays: a vector of 2^n complex amplitudes, or a
2^n x 2^n complex matrix.  At nine qubits (dim 512) dense linear algebra is
fast and exact, so no sparse or compressed representations are used.  All
comparisons between simulated and closed-form states are global-phase
invariant unless a test explicitly exercises phase bookkeeping.
"""

from __future__ import annotations

import numpy as np

from rabiqec.pauli import PauliString

NORM_TOL = 1e-12
DENSITY_TOL = 1e-12
EIG_TOL = 1e-10


def check_state(psi: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    """Validate a normalized state vector and return it as a complex array."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise ValueError(f"state vector must be 1-D, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state vector norm {norm} deviates from 1 by more than {tol}")
    return psi


def check_density(rho: np.ndarray, tol: float = DENSITY_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace and near-positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace {tr} deviates from 1")
    if np.linalg.eigvalsh(rho).min() < -EIG_TOL:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    return rho


def density_from_pure(psi: np.ndarray) -> np.ndarray:
    """Outer product |psi><psi| of a normalized vector."""
    psi = check_state(psi)
    return np.outer(psi, psi.conj())


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of rho - sigma."""
    rho = np.asarray(rho)
    sigma = np.asarray(sigma)
    if rho.shape != sigma.shape:
        raise ValueError("dimension mismatch")
    eig = np.linalg.eigvalsh(rho - sigma)
    return 0.5 * float(np.abs(eig).sum())


def expectation(pauli: PauliString, rho: np.ndarray) -> float:
    """tr(P rho); real part returned, real within 1e-12 for Hermitian P."""
    rho = np.asarray(rho)
    dim = 1 << pauli.n
    if rho.shape != (dim, dim):
        raise ValueError("dimension mismatch")
    coef = pauli._coefficients()
    src = np.arange(dim)
    # (P rho)[b, b] = coef(b ^ x) rho[b ^ x, b]
    return float(np.sum(coef[src ^ pauli.x_bits] * rho[src ^ pauli.x_bits, src]).real)


def expectation_pure(pauli: PauliString, psi: np.ndarray) -> float:
    """<psi|P|psi> without forming the density matrix."""
    return float(np.vdot(psi, pauli.apply(psi)).real)


def fidelity_up_to_phase(psi: np.ndarray, phi: np.ndarray) -> float:
    """|<psi|phi>| for normalized vectors; invariant under global phases."""
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != phi.shape:
        raise ValueError("dimension mismatch")
    return float(abs(np.vdot(psi, phi)))


def purity(rho: np.ndarray) -> float:
    rho = np.asarray(rho)
    return float(np.einsum("ij,ji->", rho, rho).real)


def save_state(psi: np.ndarray, path) -> None:
    """Write a state vector as flat text: one ``index real imag`` line per entry."""
    psi = np.asarray(psi, dtype=complex)
    with open(path, "w") as fh:
        for i, a in enumerate(psi):
            fh.write(f"{i} {a.real:.17g} {a.imag:.17g}\n")


def load_state(path) -> np.ndarray:
    rows = np.loadtxt(path, ndmin=2)
    psi = np.zeros(len(rows), dtype=complex)
    psi[rows[:, 0].astype(int)] = rows[:, 1] + 1j * rows[:, 2]
    return psi
