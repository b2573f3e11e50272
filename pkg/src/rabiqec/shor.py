"""The nine-qubit Shor code: logical basis, stabilizers, and code checks.

Logical basis states are the three-block GHZ products

    |0_L> = 2^{-3/2} (|000> + |111>)^{x3}
    |1_L> = 2^{-3/2} (|000> - |111>)^{x3}

The logical X is taken as Z1 Z4 Z7 (one qubit from each block); the code is
degenerate, so Z3 Z6 Z9 and other one-per-block Z triples act identically on
the code space.  Logical Z is fixed here as X1 X2 X3 -- the code itself does
not single out a choice, and this one is needed only to report logical Bloch
components.

Stabilizer generators: the six intra-block Z pairs detect bit flips; the two
six-fold X products X1..X6 and X4..X9 detect phase flips.  A phase flip on any
qubit of a block is equivalent to one on any other qubit of the same block, so
phase syndromes decode to a block representative (qubit 1, 4, or 7).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from itertools import combinations, product

import numpy as np

from rabiqec.pauli import PauliString
from rabiqec.states import check_state

N_QUBITS = 9
DIM = 512

BIT_STABILIZER_PAIRS = ((1, 2), (2, 3), (4, 5), (5, 6), (7, 8), (8, 9))
PHASE_STABILIZER_SUPPORTS = ((1, 2, 3, 4, 5, 6), (4, 5, 6, 7, 8, 9))
BLOCKS = ((1, 2, 3), (4, 5, 6), (7, 8, 9))
BLOCK_REPRESENTATIVES = (1, 4, 7)


@dataclass(frozen=True)
class CodeSpace:
    logical_zero: np.ndarray
    logical_one: np.ndarray
    projector: np.ndarray
    bit_stabilizers: tuple[PauliString, ...]
    phase_stabilizers: tuple[PauliString, ...]
    logical_x: PauliString
    logical_z: PauliString
    logical_y: PauliString = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "logical_y", self.logical_x * self.logical_z * _I_PHASE)

    @property
    def basis(self) -> np.ndarray:
        """512 x 2 matrix whose columns are |0_L>, |1_L>."""
        return np.column_stack([self.logical_zero, self.logical_one])

    def code_weight(self, state: np.ndarray) -> float:
        """Weight inside the code space: ||P_c psi||^2 or tr(P_c rho)."""
        v = self.basis
        state = np.asarray(state)
        if state.ndim == 1:
            return float(np.linalg.norm(v.conj().T @ state) ** 2)
        red = v.conj().T @ state @ v
        return float(np.trace(red).real)

    def logical_block(self, rho: np.ndarray) -> np.ndarray:
        """2x2 restriction <iL| rho |jL> (unnormalized if rho leaks outside)."""
        v = self.basis
        return v.conj().T @ np.asarray(rho) @ v

    def random_code_state(self, rng: np.random.Generator) -> np.ndarray:
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        a /= np.linalg.norm(a)
        return a[0] * self.logical_zero + a[1] * self.logical_one


# i * X_L * Z_L = Y_L needs a phase-i identity helper
_I_PHASE = PauliString(N_QUBITS, 0, 0, 1)


@cache
def build_shor_code() -> CodeSpace:
    block_plus = np.zeros(8)
    block_minus = np.zeros(8)
    block_plus[0b000] = block_plus[0b111] = 1 / np.sqrt(2)
    block_minus[0b000], block_minus[0b111] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    v0 = np.kron(np.kron(block_plus, block_plus), block_plus).astype(complex)
    v1 = np.kron(np.kron(block_minus, block_minus), block_minus).astype(complex)
    projector = np.outer(v0, v0.conj()) + np.outer(v1, v1.conj())
    bit = tuple(
        PauliString.from_terms([(a, "Z"), (b, "Z")], N_QUBITS) for a, b in BIT_STABILIZER_PAIRS
    )
    phase = tuple(
        PauliString.from_terms([(i, "X") for i in sup], N_QUBITS)
        for sup in PHASE_STABILIZER_SUPPORTS
    )
    return CodeSpace(
        logical_zero=v0,
        logical_one=v1,
        projector=projector,
        bit_stabilizers=bit,
        phase_stabilizers=phase,
        logical_x=PauliString.from_terms([(1, "Z"), (4, "Z"), (7, "Z")], N_QUBITS),
        logical_z=PauliString.from_terms([(1, "X"), (2, "X"), (3, "X")], N_QUBITS),
    )


def in_code_space(psi: np.ndarray, tol: float = 1e-10) -> bool:
    code = build_shor_code()
    psi = check_state(psi)
    return code.code_weight(psi) > 1 - tol


# -- Knill-Laflamme correctability check ------------------------------------


@dataclass
class KLReport:
    operators: list[PauliString]
    chi: np.ndarray
    violations: list[tuple[PauliString, PauliString, float]]

    @property
    def satisfied(self) -> bool:
        return not self.violations


def single_qubit_errors(include_identity: bool = True) -> list[PauliString]:
    ops = [PauliString.identity(N_QUBITS)] if include_identity else []
    for i in range(1, N_QUBITS + 1):
        for letter in "XYZ":
            ops.append(PauliString.from_terms([(i, letter)], N_QUBITS))
    return ops


def kl_check(code: CodeSpace, errors, tol: float = 1e-10) -> KLReport:
    """Check P_c E^dag F P_c = chi P_c over all pairs from ``errors``.

    The 512-dim condition collapses to the 2x2 block <iL| E^dag F |jL>: the
    pair passes iff that block is chi * identity.  Off-code-space leakage
    cannot hide here because the basis columns have full rank.
    """
    ops = list(errors)
    v0, v1 = code.logical_zero, code.logical_one
    nops = len(ops)
    chi = np.zeros((nops, nops), dtype=complex)
    violations = []
    applied = [(p.apply(v0), p.apply(v1)) for p in ops]
    for a, (e0, e1) in enumerate(applied):
        for b, (f0, f1) in enumerate(applied):
            # block of E^dag F: m[i, j] = <E iL | F jL>
            m00 = np.vdot(e0, f0)
            m01 = np.vdot(e0, f1)
            m10 = np.vdot(e1, f0)
            m11 = np.vdot(e1, f1)
            value = 0.5 * (m00 + m11)
            dev = max(abs(m00 - value), abs(m11 - value), abs(m01), abs(m10))
            chi[a, b] = value
            if dev > tol:
                violations.append((ops[a], ops[b], float(dev)))
    return KLReport(operators=ops, chi=chi, violations=violations)


def min_weight_logical_x(code: CodeSpace, max_weight: int):
    """Exhaustively search for the lowest-weight Pauli acting as logical X.

    Returns None when no Pauli of weight <= max_weight swaps |0_L> and |1_L>.
    """
    if max_weight > 4:
        raise ValueError("exhaustive search supported up to weight 4")
    v0, v1 = code.logical_zero, code.logical_one
    for w in range(1, max_weight + 1):
        for qubits in combinations(range(1, N_QUBITS + 1), w):
            for letters in product("XYZ", repeat=w):
                p = PauliString.from_terms(list(zip(qubits, letters)), N_QUBITS)
                p0 = p.apply(v0)
                if abs(np.vdot(v1, p0)) < 1 - 1e-10:
                    continue
                if abs(np.vdot(v0, p.apply(v1))) > 1 - 1e-10:
                    return p
    return None
