"""Depolarizing noise: deterministic channel form and trajectory unraveling.

The noise model is the product of single-qubit depolarizing channels

    E_dt[rho] = (1 - eps dt) rho + (eps dt / 3) sum_a  s_a rho s_a

applied to every qubit at the end of every subinterval dt = t / N of the
evolution window.  `evolve_noisy` implements exactly this N-subinterval
construction (noise at subinterval ends, not a continuous integrator), so its
N -> infinity limit is the model's definition and its leading discretization
error decays as 1/N.

Implementation note: the single-qubit channel acts on density-matrix entries
as  E[rho][a,b] = (1-q) rho[a,b] + (q/2) delta_{a_i=b_i} (rho[a,b] +
rho[a^e_i, b^e_i])  with q = 4 eps dt / 3, which follows from the identity
sum_a s_a rho s_a = 2 tr_i(rho) x I_i - rho.  The scalar (1-q)^n is fused
into the unitary substep, leaving only diagonal-block corrections per qubit.

Trajectory sampling uses a counter-based generator keyed by (seed, trajectory
index, subinterval, qubit), so ensembles are reproducible and independent of
batching or evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

try:
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

MAX_EPS_DT = 0.1

_PAULI_LETTERS = ("X", "Y", "Z")


@dataclass(frozen=True)
class NoiseParams:
    """Per-qubit depolarizing rate and subinterval count per evolved window."""

    epsilon: float
    substeps: int = 256

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        if self.substeps < 1:
            raise ValueError("substeps must be at least 1")

    def dt(self, t: float) -> float:
        return t / self.substeps


# -- deterministic channel ---------------------------------------------------


def _depolarize_corrections_numpy(rho: np.ndarray, c: float, n: int) -> None:
    for i in range(n):
        left = 1 << i
        right = 1 << (n - 1 - i)
        r6 = rho.reshape(left, 2, right, left, 2, right)
        d00 = r6[:, 0, :, :, 0, :]
        d11 = r6[:, 1, :, :, 1, :]
        s = c * (d00 + d11)
        d00 += s
        d11 += s


if _HAVE_NUMBA:

    @_njit(cache=True)
    def _depolarize_corrections_numba(rho, c, n):  # pragma: no cover - jitted
        dim = 1 << n
        for i in range(n):
            m = 1 << (n - 1 - i)
            for a in range(dim):
                if a & m:
                    continue
                a1 = a | m
                for b in range(dim):
                    if b & m:
                        continue
                    b1 = b | m
                    s = c * (rho[a, b] + rho[a1, b1])
                    rho[a, b] += s
                    rho[a1, b1] += s


def _depolarize_corrections(rho: np.ndarray, c: float, n: int) -> None:
    """In-place diagonal-block part of the product channel (no overall scale)."""
    if _HAVE_NUMBA:
        _depolarize_corrections_numba(rho, c, n)
    else:
        _depolarize_corrections_numpy(rho, c, n)


def depolarize_step(rho: np.ndarray, epsilon_dt: float) -> np.ndarray:
    """One application of the all-qubit depolarizing product channel.

    Trace and Hermiticity are preserved exactly; requires 0 <= eps dt <= 0.1.
    """
    if not 0 <= epsilon_dt <= MAX_EPS_DT:
        raise ValueError(f"epsilon*dt must lie in [0, {MAX_EPS_DT}], got {epsilon_dt}")
    rho = np.array(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    n = int(rho.shape[0]).bit_length() - 1
    if 1 << n != rho.shape[0]:
        raise ValueError("dimension must be a power of two")
    if epsilon_dt == 0:
        return rho
    q = 4.0 * epsilon_dt / 3.0
    _depolarize_corrections(rho, 0.5 * q / (1.0 - q), n)
    rho *= (1.0 - q) ** n
    return rho


def evolve_noisy(rho0: np.ndarray, t: float, energies: np.ndarray, noise: NoiseParams) -> np.ndarray:
    """Noisy evolution over (0, t]: N unitary substeps, noise at each substep end."""
    rho = np.array(rho0, dtype=complex)
    n_steps = noise.substeps
    dt = t / n_steps
    gamma = noise.epsilon * dt
    if gamma > MAX_EPS_DT:
        raise ValueError(
            f"epsilon*dt = {gamma} exceeds {MAX_EPS_DT}; increase substeps"
        )
    dim = rho.shape[0]
    n = int(dim).bit_length() - 1
    u = np.exp(-1j * np.asarray(energies) * dt)
    step_matrix = np.outer(u, u.conj())
    if gamma == 0:
        # diagonal evolution is exact at any step count
        u_full = np.exp(-1j * np.asarray(energies) * t)
        return rho * np.outer(u_full, u_full.conj())
    q = 4.0 * gamma / 3.0
    step_matrix *= (1.0 - q) ** n
    c = 0.5 * q / (1.0 - q)
    for _ in range(n_steps):
        rho *= step_matrix
        _depolarize_corrections(rho, c, n)
    return rho


# -- counter-based RNG -------------------------------------------------------

_K_TRAJ = np.uint64(0x9E3779B97F4A7C15)
_K_STEP = np.uint64(0xC2B2AE3D27D4EB4F)
_K_QUBIT = np.uint64(0x165667B19E3779F9)
_U64_NORM = float(2.0**-64)


def _mix64(x: np.ndarray) -> np.ndarray:
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def _uniforms(seed: int, traj: np.ndarray, step: int, n_qubits: int) -> np.ndarray:
    """Uniforms in [0, 1) indexed by (seed, trajectory, subinterval, qubit)."""
    traj = traj.astype(np.uint64)
    # 0-d arrays keep the wrapping uint64 arithmetic silent
    step_term = _K_STEP * np.asarray(step, dtype=np.uint64)
    base = _mix64(np.uint64(seed) ^ (_K_TRAJ * traj))
    base = _mix64(base ^ step_term)
    qubits = np.arange(n_qubits, dtype=np.uint64)
    u = _mix64(base[:, None] ^ (_K_QUBIT * qubits[None, :]))
    return u.astype(np.float64) * _U64_NORM


# -- trajectory unraveling ---------------------------------------------------


@dataclass
class TrajectoryRecord:
    seed: int
    index: int
    events: list  # (time, qubit index 1-based, letter)
    final_state: np.ndarray


def _apply_single_qubit_errors(psi_rows: np.ndarray, qubit: int, alpha: int, n: int) -> np.ndarray:
    """Apply X/Y/Z (alpha = 0/1/2) on 1-based ``qubit`` to a batch of rows."""
    pos = n - qubit
    dim = psi_rows.shape[-1]
    if alpha == 2:  # Z
        sign = 1.0 - 2.0 * ((np.arange(dim) >> pos) & 1)
        return psi_rows * sign
    perm = np.arange(dim) ^ (1 << pos)
    if alpha == 0:  # X
        return psi_rows[..., perm]
    sign = 1.0 - 2.0 * ((np.arange(dim) >> pos) & 1)
    return (1j * sign * psi_rows)[..., perm]


def sample_trajectory(
    psi0: np.ndarray,
    t: float,
    energies: np.ndarray,
    noise: NoiseParams,
    seed: int,
    index: int = 0,
) -> TrajectoryRecord:
    """One stochastic unraveling: per subinterval each qubit suffers X, Y or Z
    with probability eps dt / 3 each.  Deterministic given (seed, index)."""
    psi = np.asarray(psi0, dtype=complex).copy()
    dim = psi.shape[0]
    n = int(dim).bit_length() - 1
    n_steps = noise.substeps
    dt = t / n_steps
    gamma = noise.epsilon * dt
    if gamma > MAX_EPS_DT:
        raise ValueError("epsilon*dt too large; increase substeps")
    u = np.exp(-1j * np.asarray(energies) * dt)
    traj = np.array([index], dtype=np.uint64)
    events = []
    for step in range(n_steps):
        psi = u * psi
        if gamma == 0:
            continue
        uni = _uniforms(seed, traj, step, n)[0]
        for q in range(n):
            if uni[q] < gamma:
                alpha = min(int(3 * uni[q] / gamma), 2)
                psi = _apply_single_qubit_errors(psi, q + 1, alpha, n)
                events.append(((step + 1) * dt, q + 1, _PAULI_LETTERS[alpha]))
    return TrajectoryRecord(seed=seed, index=index, events=events, final_state=psi)


@dataclass
class EnsembleResult:
    seed: int
    num_trajectories: int
    rho: np.ndarray
    event_counts: np.ndarray
    final_states: np.ndarray | None = None


def trajectory_ensemble(
    psi0: np.ndarray,
    t: float,
    energies: np.ndarray,
    noise: NoiseParams,
    seed: int,
    num_trajectories: int,
    batch_size: int = 16384,
    keep_states: bool = False,
) -> EnsembleResult:
    """Vectorized ensemble of trajectories sharing the counter-based stream.

    The ensemble density matrix is accumulated per fixed-size batch with BLAS,
    so results are independent of batch boundaries up to float summation of
    identical per-trajectory terms.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    dim = psi0.shape[0]
    n = int(dim).bit_length() - 1
    n_steps = noise.substeps
    dt = t / n_steps
    gamma = noise.epsilon * dt
    if gamma > MAX_EPS_DT:
        raise ValueError("epsilon*dt too large; increase substeps")
    u = np.exp(-1j * np.asarray(energies) * dt)
    rho = np.zeros((dim, dim), dtype=complex)
    event_counts = np.zeros(num_trajectories, dtype=np.int64)
    kept = np.empty((num_trajectories, dim), dtype=complex) if keep_states else None
    for start in range(0, num_trajectories, batch_size):
        stop = min(start + batch_size, num_trajectories)
        traj = np.arange(start, stop, dtype=np.uint64)
        psi = np.broadcast_to(psi0, (stop - start, dim)).copy()
        for step in range(n_steps):
            psi *= u
            if gamma == 0:
                continue
            uni = _uniforms(seed, traj, step, n)
            hits = uni < gamma
            if not hits.any():
                continue
            event_counts[start:stop] += hits.sum(axis=1)
            alpha = np.minimum((3 * uni / gamma).astype(int), 2)
            for q in range(n):
                col_hits = hits[:, q]
                if not col_hits.any():
                    continue
                for a in range(3):
                    rows = np.nonzero(col_hits & (alpha[:, q] == a))[0]
                    if rows.size:
                        psi[rows] = _apply_single_qubit_errors(psi[rows], q + 1, a, n)
        rho += psi.T @ psi.conj()
        if keep_states:
            kept[start:stop] = psi
    rho /= num_trajectories
    return EnsembleResult(
        seed=seed,
        num_trajectories=num_trajectories,
        rho=rho,
        event_counts=event_counts,
        final_states=kept,
    )
