"""Syndrome measurement, recovery, and the error-correction schedule.

The protocol: bit-flip QEC at every subinterval boundary nu = tau / n, and
full (bit + phase) QEC at every period boundary t_m = m tau, where
tau = pi / (2 J) is the time at which the drive returns the register to the
code space.  Phase-flip QEC must not run between period boundaries: the drive
itself leaks the state out of the code space there, and the phase syndrome
misreads that leakage as noise.  Bit-flip QEC is transparent at all times
because the Hamiltonian contains no X or Y factors.

QEC acts here as the deterministic branch-averaged channel on density
matrices: measure the stabilizer generators projectively, decode each outcome
to the nearest single-qubit correction, and average the recovered branches.
Trajectory mode samples one branch per boundary on state vectors instead.

Event ordering at coinciding times is fixed (and overridable in config):
noise substep, then the deterministic pre-correction Pauli, then bit QEC,
then phase QEC.  Metrics are sampled after each operation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from rabiqec import noise as noise_mod
from rabiqec.hamiltonian import (
    SystemParams,
    build_hamiltonian,
    evolve_density,
    PAIR_DIAGS,
    PAIR_QUBITS,
    XL_DIAG,
)
from rabiqec.noise import NoiseParams
from rabiqec.pauli import PauliString
from rabiqec.shor import BLOCKS, BLOCK_REPRESENTATIVES, DIM, N_QUBITS, build_shor_code
from rabiqec.states import check_state, trace_distance

_BASIS = np.arange(DIM)


def _qubit_mask(*qubits: int) -> int:
    mask = 0
    for q in qubits:
        mask |= 1 << (N_QUBITS - q)
    return mask


def _parity(values: np.ndarray, mask: int) -> np.ndarray:
    out = np.zeros(DIM, dtype=np.int64)
    for pos in range(N_QUBITS):
        if (mask >> pos) & 1:
            out ^= (values >> pos) & 1
    return out


# -- bit-flip syndrome -------------------------------------------------------

# per block: 2-bit sub-syndrome (first pair, second pair) -> flipped qubit slot
_BLOCK_DECODE = {(0, 0): None, (1, 0): 0, (1, 1): 1, (0, 1): 2}


@cache
def _bit_tables():
    """Sector id per basis state, plus per-sector correction mask and label."""
    pair_masks = [_qubit_mask(a, b) for a, b in ((1, 2), (2, 3), (4, 5), (5, 6), (7, 8), (8, 9))]
    sector = np.zeros(DIM, dtype=np.int64)
    for j, mask in enumerate(pair_masks):
        sector |= _parity(_BASIS, mask) << j
    corrections = []
    labels = []
    for s in range(64):
        flipped = []
        mask = 0
        for b, block in enumerate(BLOCKS):
            sub = ((s >> (2 * b)) & 1, (s >> (2 * b + 1)) & 1)
            slot = _BLOCK_DECODE[sub]
            if slot is not None:
                qubit = block[slot]
                flipped.append(qubit)
                mask |= _qubit_mask(qubit)
        corrections.append(mask)
        labels.append(
            "none" if not flipped else "bit-flip qubit " + ",".join(str(q) for q in flipped)
        )
    sector_rows = [np.nonzero(sector == s)[0] for s in range(64)]
    return sector, tuple(corrections), tuple(labels), sector_rows


# -- phase syndrome ----------------------------------------------------------


@cache
def _phase_tables():
    m1 = _BASIS ^ _qubit_mask(1, 2, 3, 4, 5, 6)
    m2 = _BASIS ^ _qubit_mask(4, 5, 6, 7, 8, 9)
    m12 = _BASIS ^ _qubit_mask(1, 2, 3, 7, 8, 9)
    # outcome (sign of X1..X6, sign of X4..X9) -> correction representative
    outcomes = {
        (1, 1): (None, "none"),
        (-1, 1): (1, "phase block 1"),
        (-1, -1): (2, "phase block 2"),
        (1, -1): (3, "phase block 3"),
    }
    rec_signs = {}
    for block_no, rep in zip((1, 2, 3), BLOCK_REPRESENTATIVES):
        z = PauliString.from_terms([(rep, "Z")], N_QUBITS)
        rec_signs[block_no] = z.diagonal().real
    return m1, m2, m12, outcomes, rec_signs


def _phase_project_vector(psi: np.ndarray, s1: int, s2: int) -> np.ndarray:
    m1, m2, m12, _, _ = _phase_tables()
    return 0.25 * (psi + s1 * psi[m1] + s2 * psi[m2] + s1 * s2 * psi[m12])


def _phase_project_density(rho: np.ndarray, s1: int, s2: int) -> np.ndarray:
    m1, m2, m12, _, _ = _phase_tables()
    half = 0.25 * (rho + s1 * rho[m1, :] + s2 * rho[m2, :] + s1 * s2 * rho[m12, :])
    return 0.25 * (half + s1 * half[:, m1] + s2 * half[:, m2] + s1 * s2 * half[:, m12])


# -- syndrome branches -------------------------------------------------------


@dataclass
class SyndromeBranch:
    label: str
    probability: float
    post_state: np.ndarray  # normalized post-measurement density matrix
    correction: PauliString | None  # recovery Pauli implied by the label


def measure_bit_syndrome(rho: np.ndarray, atol: float = 1e-12) -> list[SyndromeBranch]:
    """Project onto the joint eigenspaces of the six Z-pair generators.

    Sectors with probability below ``atol`` are omitted; the returned
    probabilities sum to the retained weight (1 within atol * 64).
    """
    rho = np.asarray(rho, dtype=complex)
    sector, corrections, labels, sector_rows = _bit_tables()
    diag = np.real(np.diag(rho))
    branches = []
    for s in range(64):
        rows = sector_rows[s]
        prob = float(diag[rows].sum())
        if prob <= atol:
            continue
        post = np.zeros_like(rho)
        post[np.ix_(rows, rows)] = rho[np.ix_(rows, rows)] / prob
        mask = corrections[s]
        correction = None
        if mask:
            terms = [(q, "X") for q in range(1, N_QUBITS + 1) if (mask >> (N_QUBITS - q)) & 1]
            correction = PauliString.from_terms(terms, N_QUBITS)
        branches.append(SyndromeBranch(labels[s], prob, post, correction))
    branches.sort(key=lambda b: -b.probability)
    return branches


def measure_phase_syndrome(rho: np.ndarray, atol: float = 1e-12) -> list[SyndromeBranch]:
    """Project onto the eigenspaces of the two six-fold X generators.

    Labels decode to a phase-flip block representative: a phase flip anywhere
    in a block is equivalent to one on its representative qubit.
    """
    rho = np.asarray(rho, dtype=complex)
    _, _, _, outcomes, _ = _phase_tables()
    branches = []
    for (s1, s2), (block_no, label) in outcomes.items():
        post = _phase_project_density(rho, s1, s2)
        prob = float(np.trace(post).real)
        if prob <= atol:
            continue
        correction = None
        if block_no is not None:
            rep = BLOCK_REPRESENTATIVES[block_no - 1]
            correction = PauliString.from_terms([(rep, "Z")], N_QUBITS)
        branches.append(SyndromeBranch(label, prob, post / prob, correction))
    branches.sort(key=lambda b: -b.probability)
    return branches


def recover(branch: SyndromeBranch) -> np.ndarray:
    """Apply the inverse Pauli indicated by the branch label; none -> identity."""
    if branch.correction is None:
        return branch.post_state
    return branch.correction.conjugate_density(branch.post_state)


# -- deterministic branch-averaged channels ----------------------------------


def bit_correction_channel(rho: np.ndarray) -> np.ndarray:
    """Branch-averaged bit-flip QEC: every sector is decoded and relocated
    into the trivial-syndrome sector; inter-sector coherences are erased."""
    rho = np.asarray(rho, dtype=complex)
    _, corrections, _, sector_rows = _bit_tables()
    out = np.zeros_like(rho)
    for s in range(64):
        rows = sector_rows[s]
        target = rows ^ corrections[s]
        out[np.ix_(target, target)] += rho[np.ix_(rows, rows)]
    return out


def phase_correction_channel(rho: np.ndarray) -> np.ndarray:
    """Branch-averaged phase-flip QEC over the four X-sextet outcomes."""
    rho = np.asarray(rho, dtype=complex)
    _, _, _, outcomes, rec_signs = _phase_tables()
    out = np.zeros_like(rho)
    for (s1, s2), (block_no, _) in outcomes.items():
        post = _phase_project_density(rho, s1, s2)
        if block_no is not None:
            sign = rec_signs[block_no]
            post = post * np.outer(sign, sign)
        out += post
    return out


def qec_channel(rho: np.ndarray, kind: str) -> np.ndarray:
    """Deterministic CPTP correction map: 'bit', 'phase', or 'both'."""
    if kind == "bit":
        return bit_correction_channel(rho)
    if kind == "phase":
        return phase_correction_channel(rho)
    if kind == "both":
        return phase_correction_channel(bit_correction_channel(rho))
    raise ValueError(f"unknown QEC kind {kind!r}")


# -- schedule ------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceSchedule:
    """Timing of the error-correction sequence.

    Bit-flip QEC runs at every intra-period boundary (regular grid of n
    boundaries per period, or the explicit ``boundaries`` list); full QEC runs
    at every period boundary t_m = m tau.  ``mu`` configures the naive
    phase-QEC failure demonstration instead of the sequence.
    """

    tau: float
    n: int = 1
    total_periods: int = 1
    mu: float | None = None
    precorrection: PauliString | None = None
    boundaries: tuple[float, ...] | None = None
    noise_first_at_boundaries: bool = True

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError("tau must be positive")
        if self.n < 1 or self.total_periods < 1:
            raise ValueError("n and total_periods must be at least 1")
        if self.boundaries is not None:
            b = tuple(float(x) for x in self.boundaries)
            if sorted(b) != list(b) or not b:
                raise ValueError("boundaries must be sorted and non-empty")
            if b[0] <= 0:
                raise ValueError("boundaries must lie in (0, tau]")
            if abs(b[-1] - self.tau) > 1e-12 * self.tau:
                raise ValueError("last boundary must coincide with tau")
            object.__setattr__(self, "boundaries", b)

    @property
    def nu(self) -> float:
        return self.tau / self.n

    def intra_period_offsets(self) -> tuple[float, ...]:
        if self.boundaries is not None:
            return self.boundaries
        return tuple((j + 1) * self.tau / self.n for j in range(self.n))


@dataclass
class SequencePoint:
    t: float
    stage: str  # "noisy", "precorrect", "bit_qec", "phase_qec", "sample"
    p0: float
    code_weight: float
    distance_to_noiseless: float | None
    target_overlap: float | None


@dataclass
class SequenceResult:
    points: list[SequencePoint]
    final_rho: np.ndarray

    def at_stage(self, stage: str) -> list[SequencePoint]:
        return [p for p in self.points if p.stage == stage]


def _metrics(rho, t, stage, code, rho0, energies, omega, psi0, compute_distance):
    p0 = float(np.real(code.logical_zero.conj() @ rho @ code.logical_zero))
    weight = code.code_weight(rho)
    distance = None
    if compute_distance:
        distance = trace_distance(rho, evolve_density(energies, rho0, t))
    overlap = None
    if psi0 is not None:
        target = np.exp(1j * omega * t * XL_DIAG) * psi0
        overlap = float(np.real(target.conj() @ rho @ target))
    return SequencePoint(t, stage, p0, weight, distance, overlap)


def run_sequence(
    rho0: np.ndarray,
    params: SystemParams,
    noise: NoiseParams,
    schedule: SequenceSchedule,
    *,
    compute_distance: bool = True,
    psi0: np.ndarray | None = None,
    sample_substeps: bool = False,
) -> SequenceResult:
    """Run the error-correction sequence on a density matrix.

    Each intra-period segment evolves under `evolve_noisy`'s construction with
    ``noise.substeps`` subintervals per regular boundary spacing; bit QEC acts
    at every boundary and the pre-correction + full QEC at period boundaries.
    With epsilon = 0 the unitary segments are evaluated in a single exact
    step.
    """
    if abs(schedule.tau - params.tau) > 1e-9 * params.tau:
        raise ValueError("schedule tau does not match pi / (2 J) of the parameters")
    code = build_shor_code()
    energies = build_hamiltonian(params)
    rho = np.array(rho0, dtype=complex)
    if code.code_weight(rho) < 1 - 1e-10:
        raise ValueError("initial state is not in the code space")
    points: list[SequencePoint] = []

    offsets = schedule.intra_period_offsets()
    points.append(
        _metrics(rho, 0.0, "noisy", code, rho0, energies, params.omega, psi0, compute_distance)
    )
    for m in range(1, schedule.total_periods + 1):
        t_start = (m - 1) * schedule.tau
        prev = 0.0
        for j, off in enumerate(offsets):
            seg = off - prev
            t_here = t_start + off
            is_period_boundary = j == len(offsets) - 1
            rho = _evolve_segment(
                rho,
                seg,
                energies,
                noise,
                schedule.noise_first_at_boundaries,
                sample_points=points if sample_substeps else None,
                t0=t_start + prev,
                metrics_args=(code, rho0, energies, params.omega, psi0, compute_distance),
            )
            prev = off
            points.append(
                _metrics(rho, t_here, "noisy", code, rho0, energies, params.omega, psi0, compute_distance)
            )
            # Freely evolved states carry the pair residue only at odd m, but
            # once a boundary has been cleaned every later period deposits the
            # residue again, so the correction is applied at every boundary.
            if is_period_boundary and schedule.precorrection is not None:
                rho = schedule.precorrection.conjugate_density(rho)
                points.append(
                    _metrics(rho, t_here, "precorrect", code, rho0, energies, params.omega, psi0, compute_distance)
                )
            rho = bit_correction_channel(rho)
            if not schedule.noise_first_at_boundaries and noise.epsilon > 0:
                rho = noise_mod.depolarize_step(rho, noise.epsilon * seg / noise.substeps)
            points.append(
                _metrics(rho, t_here, "bit_qec", code, rho0, energies, params.omega, psi0, compute_distance)
            )
            if is_period_boundary:
                rho = phase_correction_channel(rho)
                points.append(
                    _metrics(rho, t_here, "phase_qec", code, rho0, energies, params.omega, psi0, compute_distance)
                )
    return SequenceResult(points=points, final_rho=rho)


def _evolve_segment(rho, seg, energies, noise, noise_at_end, sample_points, t0, metrics_args):
    """Noisy evolution over one segment; optionally record per-substep samples."""
    if noise.epsilon == 0:
        if sample_points is not None:
            _record_segment_samples(rho, seg, energies, noise.substeps, sample_points, t0, metrics_args)
        return evolve_density(energies, rho, seg)
    n_steps = noise.substeps
    dt = seg / n_steps
    gamma = noise.epsilon * dt
    if gamma > noise_mod.MAX_EPS_DT:
        raise ValueError("epsilon*dt too large; increase substeps")
    u = np.exp(-1j * np.asarray(energies) * dt)
    step_matrix = np.outer(u, u.conj())
    q = 4.0 * gamma / 3.0
    c = 0.5 * q / (1.0 - q)
    scale = (1.0 - q) ** N_QUBITS
    last_noisy = n_steps if noise_at_end else n_steps - 1
    rho = rho.copy()
    for step in range(1, n_steps + 1):
        rho *= step_matrix
        if step <= last_noisy:
            noise_mod._depolarize_corrections(rho, c, N_QUBITS)
            rho *= scale
        if sample_points is not None and step < n_steps:
            code, rho0, en, omega, psi0, compute_distance = metrics_args
            sample_points.append(
                _metrics(rho, t0 + step * dt, "sample", code, rho0, en, omega, psi0, compute_distance)
            )
    return rho


def _record_segment_samples(rho, seg, energies, n_steps, points, t0, metrics_args):
    code, rho0, en, omega, psi0, compute_distance = metrics_args
    for step in range(1, n_steps):
        t = t0 + step * seg / n_steps
        snapshot = evolve_density(energies, rho, step * seg / n_steps)
        points.append(_metrics(snapshot, t, "sample", code, rho0, en, omega, psi0, compute_distance))


def run_naive_phase_sequence(
    rho0: np.ndarray,
    params: SystemParams,
    mu: float,
    t_max: float,
    *,
    noise: NoiseParams | None = None,
    samples_per_interval: int = 8,
) -> SequenceResult:
    """Phase-flip QEC applied blindly every ``mu`` (no schedule): the failure
    mode in which in-band leakage of the drive is misread as noise."""
    code = build_shor_code()
    energies = build_hamiltonian(params)
    rho = np.array(rho0, dtype=complex)
    points = []
    n_intervals = int(round(t_max / mu))
    for j in range(n_intervals):
        t0 = j * mu
        for s in range(1, samples_per_interval + 1):
            t = t0 + s * mu / samples_per_interval
            snap = evolve_or_noisy(rho, s * mu / samples_per_interval, energies, noise)
            if s < samples_per_interval:
                points.append(_metrics(snap, t, "sample", code, rho0, energies, params.omega, None, False))
        rho = evolve_or_noisy(rho, mu, energies, noise)
        points.append(_metrics(rho, (j + 1) * mu, "noisy", code, rho0, energies, params.omega, None, False))
        rho = phase_correction_channel(rho)
        points.append(_metrics(rho, (j + 1) * mu, "phase_qec", code, rho0, energies, params.omega, None, False))
    return SequenceResult(points=points, final_rho=rho)


def evolve_or_noisy(rho, t, energies, noise):
    if noise is None or noise.epsilon == 0:
        return evolve_density(energies, rho, t)
    return noise_mod.evolve_noisy(rho, t, energies, noise)


# -- trajectory (sampled-syndrome) mode --------------------------------------

_SYNDROME_STREAM_SALT = 0x51ED2700A5A5A5A5


@dataclass
class SequenceTrajectory:
    seed: int
    index: int
    events: list
    syndromes: list  # (t, kind, label)
    final_state: np.ndarray


def run_sequence_trajectory(
    psi0: np.ndarray,
    params: SystemParams,
    noise: NoiseParams,
    schedule: SequenceSchedule,
    seed: int,
    index: int = 0,
) -> SequenceTrajectory:
    """One stochastic realization: sampled noise events and sampled syndrome
    outcomes on a state vector."""
    psi = check_state(psi0).copy()
    energies = build_hamiltonian(params)
    sector, corrections, labels, _ = _bit_tables()
    _, _, _, outcomes, rec_signs = _phase_tables()
    events: list = []
    syndromes: list = []
    traj = np.array([index], dtype=np.uint64)
    n_steps = noise.substeps
    boundary_counter = 0
    global_step = 0
    offsets = schedule.intra_period_offsets()
    for m in range(1, schedule.total_periods + 1):
        t_start = (m - 1) * schedule.tau
        prev = 0.0
        for j, off in enumerate(offsets):
            seg = off - prev
            dt = seg / n_steps
            gamma = noise.epsilon * dt
            u = np.exp(-1j * energies * dt)
            for step in range(n_steps):
                psi = u * psi
                if gamma > 0:
                    uni = noise_mod._uniforms(seed, traj, global_step, N_QUBITS)[0]
                    for q in range(N_QUBITS):
                        if uni[q] < gamma:
                            alpha = min(int(3 * uni[q] / gamma), 2)
                            psi = noise_mod._apply_single_qubit_errors(psi, q + 1, alpha, N_QUBITS)
                            events.append((t_start + prev + (step + 1) * dt, q + 1, "XYZ"[alpha]))
                global_step += 1
            t_here = t_start + off
            prev = off
            is_period_boundary = j == len(offsets) - 1
            if is_period_boundary and schedule.precorrection is not None:
                psi = schedule.precorrection.apply(psi)
            draw = noise_mod._uniforms(
                np.uint64(seed) ^ np.uint64(_SYNDROME_STREAM_SALT), traj, boundary_counter, 2
            )[0]
            boundary_counter += 1
            psi, label = _sample_bit_syndrome(psi, sector, corrections, labels, draw[0])
            syndromes.append((t_here, "bit", label))
            if is_period_boundary:
                psi, label = _sample_phase_syndrome(psi, outcomes, rec_signs, draw[1])
                syndromes.append((t_here, "phase", label))
    return SequenceTrajectory(seed, index, events, syndromes, psi)


def _sample_bit_syndrome(psi, sector, corrections, labels, u):
    probs = np.bincount(sector, weights=np.abs(psi) ** 2, minlength=64)
    choice = int(np.searchsorted(np.cumsum(probs), u * probs.sum(), side="right"))
    choice = min(choice, 63)
    mask = sector == choice
    psi = np.where(mask, psi, 0)
    psi = psi / np.linalg.norm(psi)
    if corrections[choice]:
        psi = psi[_BASIS ^ corrections[choice]]
    return psi, labels[choice]


def _sample_phase_syndrome(psi, outcomes, rec_signs, u):
    keys = list(outcomes)
    projected = [_phase_project_vector(psi, s1, s2) for s1, s2 in keys]
    probs = np.array([np.linalg.norm(v) ** 2 for v in projected])
    choice = int(np.searchsorted(np.cumsum(probs), u * probs.sum(), side="right"))
    choice = min(choice, len(keys) - 1)
    block_no, label = outcomes[keys[choice]]
    psi = projected[choice] / np.linalg.norm(projected[choice])
    if block_no is not None:
        psi = rec_signs[block_no] * psi
    return psi, label


# -- arbitrariness of the pair couplings (schedule normalization) -------------


def parity_precorrection_for(k) -> PauliString | None:
    """The deterministic pair correction needed at odd period boundaries.

    For integer couplings the drive returns the register to the code space at
    even boundaries, but at odd boundaries it may leave a known two-qubit Z
    residue.  The residue is found by direct evaluation of the pair-coupling
    propagator over one period on a code state, not from a hand parity table.
    Returns None when no correction is needed (all couplings odd, or all
    effectively even).
    """
    k = tuple(k)
    if any(abs(kr - round(kr)) > 1e-9 for kr in k):
        raise ValueError("pre-correction applies to integer couplings")
    k = tuple(int(round(kr)) for kr in k)
    code = build_shor_code()
    energies = np.zeros(DIM)
    for kr, pair in zip(k, PAIR_DIAGS):
        energies = energies - kr * pair  # J = 1
    tau = np.pi / 2.0
    evolved = np.exp(-1j * energies * tau) * code.logical_zero
    candidates: list[PauliString | None] = [None] + [
        PauliString.from_terms([(a, "Z"), (b, "Z")], N_QUBITS) for a, b in PAIR_QUBITS
    ]
    for cand in candidates:
        trial = evolved if cand is None else cand.apply(evolved)
        if code.code_weight(trial) > 1 - 1e-10:
            if abs(np.vdot(code.logical_zero, trial)) < 1 - 1e-10:
                continue  # must restore the original logical ray, not flip it
            return cand
    raise RuntimeError("no two-qubit Z correction restores the code space")


@dataclass(frozen=True)
class CouplingNormalization:
    """Exact rescaling J' = J / kappa with integer couplings, gcd 1."""

    j_prime: float
    k_prime: tuple[int, int, int]
    kappa: float

    @property
    def tau_prime(self) -> float:
        return np.pi / (2.0 * self.j_prime)


@dataclass(frozen=True)
class RationalApproximant:
    numerator: int
    denominator: int
    error: float
    horizon: float  # usable evolution time 1 / (J |k - k*|)

    @property
    def value(self) -> float:
        return self.numerator / self.denominator


@dataclass(frozen=True)
class ApproximationReport:
    """Continued-fraction approximants for couplings not rational within tol."""

    component_approximants: dict[int, tuple[RationalApproximant, ...]]  # key: 0,1,2


def continued_fraction_convergents(x: float, max_terms: int = 10):
    """Convergents p/q of x by the standard continued-fraction recursion."""
    out = []
    p_prev, q_prev = 1, 0
    p, q = int(math.floor(x)), 1
    remainder = x - math.floor(x)
    out.append(Fraction(p, q))
    for _ in range(max_terms - 1):
        if remainder < 1e-15:
            break
        remainder = 1.0 / remainder
        a = int(math.floor(remainder))
        remainder -= a
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(Fraction(p, q))
    return out


def normalize_couplings(k, J: float, omega: float, tol: float = 1e-9, max_denominator: int = 1000):
    """Rescale couplings to coprime integers, or report rational approximants.

    If every coupling is within ``tol`` of a fraction with denominator at most
    ``max_denominator``, returns the exact rescaling (common factors removed,
    J' = J / kappa); warns when J' <= omega, which breaks the scale separation
    the schedule relies on.  Otherwise returns continued-fraction approximants
    together with the usable time horizon 1 / (J |k - k*|) of each.
    """
    k = tuple(float(x) for x in k)
    if any(x <= 0 for x in k):
        raise ValueError("couplings must be positive")
    fracs = [Fraction(x).limit_denominator(max_denominator) for x in k]
    exact = all(abs(x - float(f)) <= tol for x, f in zip(k, fracs))
    if exact:
        q_lcm = math.lcm(*(f.denominator for f in fracs))
        nums = [f.numerator * (q_lcm // f.denominator) for f in fracs]
        g = math.gcd(*nums)
        k_prime = tuple(n // g for n in nums)
        kappa = q_lcm / g
        j_prime = J * g / q_lcm
        if j_prime <= omega:
            warnings.warn(
                f"rescaled coupling J' = {j_prime} is not large compared to omega = {omega}",
                stacklevel=2,
            )
        return CouplingNormalization(j_prime=j_prime, k_prime=k_prime, kappa=kappa)
    report = {}
    for idx, (x, f) in enumerate(zip(k, fracs)):
        if abs(x - float(f)) <= tol:
            continue
        approximants = []
        for conv in continued_fraction_convergents(x):
            err = abs(x - float(conv))
            horizon = math.inf if err == 0 else 1.0 / (J * err)
            approximants.append(
                RationalApproximant(conv.numerator, conv.denominator, err, horizon)
            )
        report[idx] = tuple(approximants)
    return ApproximationReport(component_approximants=report)
