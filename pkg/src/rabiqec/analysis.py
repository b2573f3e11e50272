"""First-order analytics of the corrected evolution, cross-validated by quadrature.

The corrected state after one period aggregates the syndrome branches of the
propagated bit-flip errors.  For a flip on a central qubit r the time-averaged
post-recovery state is

    rho_e(r) = (1/nu) Integral_0^nu  U(t') rho_H(tau - 2 t') U(t')^dag dt',
    U(t') = exp(2 i J Z_r X_L t'),

evaluated here by midpoint quadrature (`propagated_error_average`) as the
independent oracle for the sinc-formula branch table.  The phase-syndrome
outcomes split into two classes:

  * outcome "none" and outcome "block r" each occur with probability
    3/8 + (1/8) sinc(4 pi / n) and recover to the identical mixture
    (a+ rho_H + a- X_L rho_H X_L) / (a+ + a-);
  * each of the two outcomes "block r' != r" occurs with probability
    1/8 - (1/8) sinc(4 pi / n) and recovers to (rho_H + X_L rho_H X_L)/2.

The four probabilities sum to one exactly.  Averaging and expanding to first
order gives the corrected period state

    rho_c(tau) = rho_H(tau) - eps tau (1 - sinc(2 pi/n)) [rho_H - X_L rho_H X_L]

whose trace distance from rho_H is eps tau (1 - sinc(2 pi/n)) L_yz(tau),
approximately 2 pi^2 eps tau L_yz / (3 n^2) for large n.  None of these
numbers is trusted standalone: the acceptance suite checks each against the
quadrature or simulation oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rabiqec.hamiltonian import (
    SystemParams,
    XL_DIAG,
    build_hamiltonian,
    evolve,
    evolve_density,
    logical_zero_probability,
    z_product_diagonal,
)
from rabiqec.pauli import PauliString
from rabiqec.shor import CodeSpace, build_shor_code
from rabiqec.states import check_state, density_from_pure


def sinc(x: float) -> float:
    """sin(x)/x with a series branch so sinc(0) = 1 exactly."""
    x = float(x)
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return np.sin(x) / x


def recovered_mixture_weights(n: int) -> tuple[float, float]:
    """Weights (a+, a-) of rho_H and X_L rho_H X_L in the same-block branch.

    a+- = 3/16 + (1/16) sinc(4 pi/n) +- (1/4) sinc(2 pi/n); their sum is the
    branch probability 3/8 + (1/8) sinc(4 pi/n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    s4 = sinc(4 * np.pi / n)
    s2 = sinc(2 * np.pi / n)
    base = 3.0 / 16.0 + s4 / 16.0
    return base + s2 / 4.0, base - s2 / 4.0


def phase_branch_probabilities(n: int) -> tuple[float, float]:
    """Per-outcome probabilities (same-block class, other-block class).

    The same-block class contains two outcomes ("none" and "block r"), the
    other-block class the remaining two; 2 p_same + 2 p_other = 1 exactly.
    """
    s4 = sinc(4 * np.pi / n)
    return 3.0 / 8.0 + s4 / 8.0, 1.0 / 8.0 - s4 / 8.0


def propagated_error_average(
    params: SystemParams,
    r: int,
    psi0: np.ndarray,
    n: int,
    quadrature_points: int = 4096,
) -> np.ndarray:
    """Midpoint-rule evaluation of the time-averaged propagated-flip state.

    The flip time is uniform over one bit-QEC interval nu = tau / n.  This is
    the oracle for the branch table: it knows nothing of the sinc formulas,
    only the integrand.  ``psi0`` must be a code-space state.
    """
    if quadrature_points < 1000:
        raise ValueError("use at least 1000 quadrature points")
    if r not in (1, 4, 7):
        raise ValueError("r must be one of the central qubits 1, 4, 7")
    psi0 = check_state(psi0)
    energies = build_hamiltonian(params)
    tau = params.tau
    nu = tau / n
    kernel_diag = z_product_diagonal(r) * XL_DIAG
    dim = psi0.shape[0]
    rho = np.zeros((dim, dim), dtype=complex)
    chunk = 2048
    for start in range(0, quadrature_points, chunk):
        stop = min(start + chunk, quadrature_points)
        t_nodes = (np.arange(start, stop) + 0.5) * nu / quadrature_points
        cols = np.empty((stop - start, dim), dtype=complex)
        for i, t_prime in enumerate(t_nodes):
            v = evolve(energies, psi0, tau - 2 * t_prime)
            cols[i] = np.exp(2j * params.J * kernel_diag * t_prime) * v
        rho += cols.T @ cols.conj()
    return rho / quadrature_points


def predicted_corrected_state(
    rho_h_tau: np.ndarray, epsilon: float, tau: float, n: int, code: CodeSpace | None = None
) -> np.ndarray:
    """First-order corrected period state from the branch-table average."""
    code = code or build_shor_code()
    flip = code.logical_x.conjugate_density(rho_h_tau)
    return rho_h_tau - epsilon * tau * (1 - sinc(2 * np.pi / n)) * (rho_h_tau - flip)


def logical_bloch(rho: np.ndarray, code: CodeSpace | None = None) -> tuple[float, float, float]:
    """(x, y, z) Bloch components of the code-space block of rho."""
    code = code or build_shor_code()
    block = code.logical_block(rho)
    x = float(np.real(block[0, 1] + block[1, 0]))
    y = float(np.real(1j * (block[0, 1] - block[1, 0])))
    z = float(np.real(block[0, 0] - block[1, 1]))
    return x, y, z


def l_yz(rho: np.ndarray, code: CodeSpace | None = None) -> float:
    """Length of the logical Bloch vector's projection onto the y-z plane."""
    _, y, z = logical_bloch(rho, code)
    return float(np.hypot(y, z))


def predicted_distance(epsilon: float, tau: float, n: int, l_yz_value: float) -> float:
    """Large-n trace distance between corrected and noiseless period states."""
    if n < 8:
        raise ValueError("the asymptotic distance formula applies for n >= 8")
    return 2 * np.pi**2 * epsilon * tau * l_yz_value / (3 * n**2)


def required_subdivisions(epsilon: float, omega: float, tau: float) -> float:
    """Bit-QEC rounds per period needed to push the period error to
    O(max((eps tau)^2, (omega tau)^2)): (1/sqrt(eps tau)) min(1, eps/omega)."""
    if epsilon <= 0 or omega <= 0 or tau <= 0:
        raise ValueError("epsilon, omega, tau must be positive")
    return min(1.0, epsilon / omega) / np.sqrt(epsilon * tau)


# -- figure series -------------------------------------------------------------


@dataclass
class FigureSeries:
    name: str
    parameters: dict
    header: tuple[str, ...]
    rows: list[tuple]


def _time_columns(t: float, tau: float, omega: float) -> tuple[float, float, float]:
    return t, t / tau, omega * t


def hamiltonian_curve(params: SystemParams, t_grid, psi0=None) -> list[float]:
    """Simulated probability of the logical zero under the bare drive."""
    code = build_shor_code()
    psi0 = code.logical_zero if psi0 is None else psi0
    energies = build_hamiltonian(params)
    out = []
    for t in t_grid:
        amp = np.vdot(code.logical_zero, evolve(energies, psi0, t))
        out.append(float(abs(amp) ** 2))
    return out


def discrete_rotation_points(params: SystemParams, m_max: int) -> list[tuple[float, float]]:
    """(t_m, cos^2(omega t_m)) for m = 0..m_max."""
    return [
        (m * params.tau, float(np.cos(params.omega * m * params.tau) ** 2))
        for m in range(m_max + 1)
    ]


def _is_period_boundary(t: float, tau: float) -> bool:
    ratio = t / tau
    return abs(ratio - round(ratio)) < 1e-9


def figure_discrete_rotation(params: SystemParams, total_periods: int, samples_per_period: int = 25) -> FigureSeries:
    """Bare-drive curve against the ideal rotation, with period-boundary dots."""
    tau = params.tau
    t_grid = np.linspace(0.0, total_periods * tau, total_periods * samples_per_period + 1)
    dashed = hamiltonian_curve(params, t_grid)
    rows = []
    for t, p_h in zip(t_grid, dashed):
        chain = float(np.cos(params.omega * t) ** 2)
        dot = chain if _is_period_boundary(t, tau) else None
        rows.append((*_time_columns(t, tau, params.omega), chain, p_h, dot))
    return FigureSeries(
        name="discrete_rotation",
        parameters={"omega": params.omega, "J": params.J, "periods": total_periods},
        header=("t", "t_over_tau", "omega_t", "p_rabi", "p_hamiltonian", "p_discrete"),
        rows=rows,
    )


def figure_naive_phase_qec(
    params: SystemParams, mu: float, total_periods: int, samples_per_interval: int = 8
) -> FigureSeries:
    """Noiseless drive distorted by blind phase QEC every mu."""
    from rabiqec.qec import run_naive_phase_sequence

    code = build_shor_code()
    rho0 = density_from_pure(code.logical_zero)
    t_max = total_periods * params.tau
    result = run_naive_phase_sequence(
        rho0, params, mu, t_max, samples_per_interval=samples_per_interval
    )
    rows = []
    for point in result.points:
        if point.stage == "noisy":
            continue  # immediately followed by the phase_qec row at the same t
        chain = float(np.cos(params.omega * point.t) ** 2)
        p_h = hamiltonian_curve(params, [point.t])[0]
        rows.append((*_time_columns(point.t, params.tau, params.omega), chain, p_h, point.p0))
    return FigureSeries(
        name="naive_phase_qec",
        parameters={"omega": params.omega, "J": params.J, "mu": mu},
        header=("t", "t_over_tau", "omega_t", "p_rabi", "p_hamiltonian", "p_naive_qec"),
        rows=rows,
    )


def figure_corrected_sequence(
    params: SystemParams,
    epsilon: float,
    n: int,
    total_periods: int,
    substeps: int = 32,
) -> FigureSeries:
    """Corrected vs uncorrected noisy curves over the full rotation.

    Boundary rows appear twice (stage pre/post) so the corrective jumps are
    visible in the emitted table.
    """
    from rabiqec.noise import NoiseParams
    from rabiqec.qec import SequenceSchedule, run_sequence

    code = build_shor_code()
    rho0 = density_from_pure(code.logical_zero)
    noise = NoiseParams(epsilon, substeps)
    schedule = SequenceSchedule(tau=params.tau, n=n, total_periods=total_periods)
    corrected = run_sequence(
        rho0, params, noise, schedule, compute_distance=False, sample_substeps=True
    )
    uncorrected = _uncorrected_probabilities(rho0, params, noise, schedule, code)
    rows = []
    for point in corrected.points:
        key = round(point.t, 9)
        chain = float(np.cos(params.omega * point.t) ** 2)
        p_h = hamiltonian_curve(params, [point.t])[0]
        p_noisy = uncorrected.get(key)
        is_dot = point.stage == "phase_qec" or point.t == 0.0
        dot = chain if is_dot else None
        rows.append(
            (
                *_time_columns(point.t, params.tau, params.omega),
                point.stage,
                chain,
                p_h,
                p_noisy,
                point.p0,
                dot,
            )
        )
    return FigureSeries(
        name="corrected_sequence",
        parameters={
            "omega": params.omega,
            "J": params.J,
            "epsilon": epsilon,
            "n": n,
            "periods": total_periods,
        },
        header=(
            "t",
            "t_over_tau",
            "omega_t",
            "stage",
            "p_rabi",
            "p_hamiltonian",
            "p_noisy",
            "p_corrected",
            "p_discrete",
        ),
        rows=rows,
    )


def _uncorrected_probabilities(rho0, params, noise, schedule, code):
    """P0 under noise without any QEC, on the sequence's substep grid."""
    from rabiqec.noise import MAX_EPS_DT, _depolarize_corrections

    energies = build_hamiltonian(params)
    n_qubits = 9
    dt = schedule.nu / noise.substeps
    gamma = noise.epsilon * dt
    if gamma > MAX_EPS_DT:
        raise ValueError("epsilon*dt too large; increase substeps")
    u = np.exp(-1j * energies * dt)
    step_matrix = np.outer(u, u.conj())
    c = scale = 0.0
    if gamma > 0:
        q = 4.0 * gamma / 3.0
        c = 0.5 * q / (1.0 - q)
        scale = (1.0 - q) ** n_qubits
    rho = np.array(rho0, dtype=complex)
    v0 = code.logical_zero
    out = {0.0: float(np.real(v0.conj() @ rho @ v0))}
    total_steps = schedule.total_periods * schedule.n * noise.substeps
    for step in range(1, total_steps + 1):
        rho *= step_matrix
        if gamma > 0:
            _depolarize_corrections(rho, c, n_qubits)
            rho *= scale
        t = step * dt
        out[round(t, 9)] = float(np.real(v0.conj() @ rho @ v0))
    return out
