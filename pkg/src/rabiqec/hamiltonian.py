"""The always-on diagonal Hamiltonian and its exact evolution.

The register Hamiltonian is

    H = -omega Z1 Z4 Z7 - J (k1 Z1 Z4 + k4 Z4 Z7 + k7 Z7 Z1)
        + sum_{s in 2,3,5,6,8,9} g_s Z_{s-1} Z_s
        - (1/2) sum_i zeta_i Z_i

The three-qubit term rotates the logical qubit (Z1 Z4 Z7 is the logical X of
the Shor code as built here); the pair terms drive the state out of the code
space between the special times t_m = m * pi/(2 J); the g terms are stabilizer
elements and contribute only phases on code-space evolution; the single-qubit
zeta terms are removed exactly by a rotating frame.

Everything is diagonal in the computational basis, so evolution is exact
per-basis-state phase multiplication -- no time stepping, no series expansion,
and hence no discretization error anywhere in this module.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from rabiqec.pauli import PauliString
from rabiqec.shor import DIM, N_QUBITS, build_shor_code
from rabiqec.states import check_state

G_LABELS = (2, 3, 5, 6, 8, 9)
PAIR_QUBITS = ((1, 4), (4, 7), (7, 1))  # coefficients k1, k4, k7 in that order

# z_i eigenvalue of every basis state; column i-1 belongs to qubit i (qubit 1
# is the most significant bit of the basis index).
_BITS = (np.arange(DIM)[:, None] >> np.arange(N_QUBITS - 1, -1, -1)) & 1
Z_EIG = (1 - 2 * _BITS).astype(float)


def z_product_diagonal(*qubits: int) -> np.ndarray:
    """Diagonal of a product of Z operators on the given 1-based qubits."""
    d = np.ones(DIM)
    for q in qubits:
        d = d * Z_EIG[:, q - 1]
    return d


XL_DIAG = z_product_diagonal(1, 4, 7)
PAIR_DIAGS = tuple(z_product_diagonal(a, b) for a, b in PAIR_QUBITS)


@dataclass(frozen=True)
class SystemParams:
    """All Hamiltonian parameters; time unit is set by J."""

    omega: float
    J: float
    k: tuple[float, float, float] = (1.0, 1.0, 1.0)
    g: tuple[float, float, float, float, float, float] = (0.0,) * 6  # g2,g3,g5,g6,g8,g9
    zeta: tuple[float, ...] = (0.0,) * 9

    def __post_init__(self):
        if self.omega < 0 or self.J < 0:
            raise ValueError("omega and J must be non-negative")
        if len(self.k) != 3 or len(self.g) != 6 or len(self.zeta) != 9:
            raise ValueError("expected 3 pair couplings, 6 stabilizer couplings, 9 splittings")
        if self.J > 0 and self.omega >= 0.5 * self.J:
            warnings.warn(
                "omega is not small compared to J; the discrete logical rotation "
                "assumes omega << J",
                stacklevel=2,
            )

    @property
    def tau(self) -> float:
        """Period of the discrete logical rotation: pi / (2 J), exactly."""
        if self.J == 0:
            raise ValueError("tau is undefined for J = 0")
        return np.pi / (2.0 * self.J)

    @property
    def g_sum(self) -> float:
        return float(sum(self.g))


def build_hamiltonian(params: SystemParams) -> np.ndarray:
    """Diagonal of H in the computational basis (length 512, real)."""
    energies = -params.omega * XL_DIAG
    for k_r, pair in zip(params.k, PAIR_DIAGS):
        energies = energies - params.J * k_r * pair
    for g_s, s in zip(params.g, G_LABELS):
        if g_s:
            energies = energies + g_s * z_product_diagonal(s - 1, s)
    for zeta_i, i in zip(params.zeta, range(1, N_QUBITS + 1)):
        if zeta_i:
            energies = energies - 0.5 * zeta_i * Z_EIG[:, i - 1]
    return energies


def evolve(energies: np.ndarray, psi: np.ndarray, t: float) -> np.ndarray:
    """exp(-i H t) |psi> by exact per-basis-state phases."""
    return np.exp(-1j * energies * t) * np.asarray(psi, dtype=complex)


def evolve_density(energies: np.ndarray, rho: np.ndarray, t: float) -> np.ndarray:
    u = np.exp(-1j * energies * t)
    return np.asarray(rho, dtype=complex) * np.outer(u, u.conj())


def phase_outer(energies: np.ndarray, dt: float) -> np.ndarray:
    """Precomputed elementwise conjugation factor for density evolution by dt."""
    u = np.exp(-1j * energies * dt)
    return np.outer(u, u.conj())


def _require_uniform_unit_k(params: SystemParams):
    if tuple(params.k) != (1.0, 1.0, 1.0):
        raise ValueError("closed form requires k = (1, 1, 1)")
    if any(params.zeta):
        raise ValueError("closed form requires zeta = 0; use the rotating frame instead")


def closed_form_state(params: SystemParams, psi0: np.ndarray, t: float) -> np.ndarray:
    """Closed-form exp(-i H t)|psi0> for k = (1,1,1) and code-space psi0.

    The state splits into a code-space part with coefficient
    cos^3(Jt) - i sin^3(Jt) and three leaked parts (i/2) e^{iJt} sin(2Jt)
    Z_r X_L acting on the rotated state, all multiplied by the stabilizer
    phase e^{-i (sum_s g_s) t}.  The sign of that phase is pinned by agreement
    with `evolve`, which this function must reproduce amplitude-exactly.
    """
    _require_uniform_unit_k(params)
    psi0 = check_state(psi0)
    code = build_shor_code()
    if code.code_weight(psi0) < 1 - 1e-10:
        raise ValueError("initial state is not in the code space")
    jt = params.J * t
    rotated = np.exp(1j * params.omega * t * XL_DIAG) * psi0
    coeff_code = np.cos(jt) ** 3 - 1j * np.sin(jt) ** 3
    coeff_leak = 0.5j * np.exp(1j * jt) * np.sin(2 * jt)
    leak = (Z_EIG[:, 0] + Z_EIG[:, 3] + Z_EIG[:, 6]) * XL_DIAG * rotated
    return np.exp(-1j * params.g_sum * t) * (coeff_code * rotated + coeff_leak * leak)


def logical_zero_probability(params: SystemParams, t) -> np.ndarray:
    """P(|0_L>) under H from |0_L>: (cos^6 Jt + sin^6 Jt) cos^2(omega t)."""
    jt = params.J * np.asarray(t, dtype=float)
    return (np.cos(jt) ** 6 + np.sin(jt) ** 6) * np.cos(params.omega * np.asarray(t)) ** 2


# Bit flip on qubit r: (stabilizer coupling label, pair terms containing r,
# pair term not containing r).
_BITFLIP_LAYOUT = {1: (2, (0, 2), 1), 4: (5, (0, 1), 2), 7: (8, (1, 2), 0)}


def post_bitflip_state(
    params: SystemParams, psi0: np.ndarray, t_prime: float, m: int, r: int = 1
) -> np.ndarray:
    """State at t_m = m tau after a bit flip X_r at time t_prime, in closed form.

    Evaluates the propagated-error expression for k = (1,1,1): the flip picks
    up a wrong rotation phase e^{i omega (2t'-t_m) X_L}, a leaked pair factor
    on the two couplings that involve qubit r, and the alternating factor
    (i Z_pair)^m from the remaining coupling.
    """
    _require_uniform_unit_k(params)
    if r not in _BITFLIP_LAYOUT:
        raise ValueError("bit-flip closed form applies to qubits 1, 4, 7")
    psi0 = check_state(psi0)
    code = build_shor_code()
    if code.code_weight(psi0) < 1 - 1e-10:
        raise ValueError("initial state is not in the code space")
    t_m = m * params.tau
    if not 0 < t_prime < t_m:
        raise ValueError("flip time must lie strictly inside (0, m tau)")
    s_label, pairs_with_r, pair_without_r = _BITFLIP_LAYOUT[r]
    dt = 2 * t_prime - t_m

    g_phase = 0.0
    for g_s, s in zip(params.g, G_LABELS):
        g_phase += g_s * (dt if s == s_label else t_m)
    out = np.exp(1j * params.omega * dt * XL_DIAG) * psi0
    if m % 2:
        out = PAIR_DIAGS[pair_without_r] * out
    out = (1j**m) * out
    out = np.exp(1j * params.J * dt * (PAIR_DIAGS[pairs_with_r[0]] + PAIR_DIAGS[pairs_with_r[1]])) * out
    out = np.exp(-1j * g_phase) * out
    flip = PauliString.from_terms([(r, "X")], N_QUBITS)
    return flip.apply(out)


def rotating_frame(state: np.ndarray, zeta, t: float) -> np.ndarray:
    """Transform a vector or density matrix into the frame that removes
    single-qubit splittings: U0 = exp(+(i/2) sum_i zeta_i Z_i t), state ->
    U0^dag state U0 (or U0^dag |psi>)."""
    half_angles = 0.5 * np.asarray(zeta, dtype=float) @ Z_EIG.T * t
    u0 = np.exp(1j * half_angles)
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return u0.conj() * state
    return state * np.outer(u0.conj(), u0)
