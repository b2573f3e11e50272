"""Exact Pauli-string algebra on small qubit registers.

A Pauli string is stored in symplectic form: one bit mask for the X component,
one for the Z component (a qubit carries Y when both bits are set), plus an
overall phase restricted to {+1, +i, -1, -i}.  Phases are tracked exactly
rather than modulo a global phase, because the closed-form evolution formulas
elsewhere in the package carry physically bookkept phases.

Qubit labels are 1-based in the public interface.  Internally qubit 1 is the
most significant bit, so the computational basis index of |q1 q2 ... qn> is
read directly off the ket string.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 12

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {v: k for k, v in _LETTER_TO_BITS.items()}
_PHASES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)
_PHASE_PREFIX = {0: "", 1: "i ", 2: "- ", 3: "-i "}
_PREFIX_TO_POWER = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}

# i-exponent of the scalar in L1 * L2 = i^t * L3 for single-qubit letters.
# Cyclic order X -> Y -> Z -> X gives +i, the reverse gives -i.
_MUL_PHASE = {
    ("X", "Y"): 1, ("Y", "Z"): 1, ("Z", "X"): 1,
    ("Y", "X"): 3, ("Z", "Y"): 3, ("X", "Z"): 3,
}


@dataclass(frozen=True)
class PauliString:
    """Signed tensor product of I/X/Y/Z factors over ``n`` qubits."""

    n: int
    x_bits: int
    z_bits: int
    phase_power: int = 0  # exponent k in i**k

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bit mask exceeds register size")
        object.__setattr__(self, "phase_power", self.phase_power % 4)

    # -- construction ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_terms(cls, terms, n: int) -> "PauliString":
        """Build the phase +1 tensor product of single-qubit letters.

        ``terms`` is a sequence of (qubit index, letter) pairs with distinct
        1-based indices; an empty sequence gives the identity.
        """
        x = z = 0
        seen = set()
        for idx, letter in terms:
            if not 1 <= idx <= n:
                raise ValueError(f"qubit index {idx} out of range [1, {n}]")
            if idx in seen:
                raise ValueError(f"duplicate qubit index {idx}")
            seen.add(idx)
            try:
                xb, zb = _LETTER_TO_BITS[letter.upper()]
            except KeyError:
                raise ValueError(f"unknown Pauli letter {letter!r}") from None
            pos = n - idx
            x |= xb << pos
            z |= zb << pos
        return cls(n, x, z, 0)

    @classmethod
    def from_string(cls, text: str, n: int) -> "PauliString":
        """Parse textual notation like ``"Z1 Z4 Z7"`` or ``"-i X2 Y5"``.

        The identity is written ``"I"``.  Round-trips exactly with ``str()``.
        """
        tokens = text.split()
        if not tokens:
            raise ValueError("empty Pauli string")
        power = 0
        if tokens[0] in _PREFIX_TO_POWER:
            power = _PREFIX_TO_POWER[tokens[0]]
            tokens = tokens[1:]
        if tokens == ["I"] or not tokens:
            return cls(n, 0, 0, power)
        terms = []
        for tok in tokens:
            letter, idx = tok[0], tok[1:]
            if not idx.isdigit():
                raise ValueError(f"malformed Pauli token {tok!r}")
            terms.append((int(idx), letter))
        base = cls.from_terms(terms, n)
        return cls(n, base.x_bits, base.z_bits, power)

    # -- inspection --------------------------------------------------------

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_power]

    @property
    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    @property
    def is_diagonal(self) -> bool:
        return self.x_bits == 0

    def letter(self, idx: int) -> str:
        if not 1 <= idx <= self.n:
            raise ValueError(f"qubit index {idx} out of range")
        pos = self.n - idx
        return _BITS_TO_LETTER[((self.x_bits >> pos) & 1, (self.z_bits >> pos) & 1)]

    def __str__(self) -> str:
        body = " ".join(
            f"{self.letter(i)}{i}" for i in range(1, self.n + 1) if self.letter(i) != "I"
        )
        return _PHASE_PREFIX[self.phase_power] + (body or "I")

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if not isinstance(other, PauliString):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        power = self.phase_power + other.phase_power
        for i in range(1, self.n + 1):
            a, b = self.letter(i), other.letter(i)
            power += _MUL_PHASE.get((a, b), 0)
        return PauliString(
            self.n, self.x_bits ^ other.x_bits, self.z_bits ^ other.z_bits, power % 4
        )

    def adjoint(self) -> "PauliString":
        return PauliString(self.n, self.x_bits, self.z_bits, (-self.phase_power) % 4)

    def commutes_with(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        sym = (self.x_bits & other.z_bits).bit_count() + (self.z_bits & other.x_bits).bit_count()
        return sym % 2 == 0

    # -- action on states --------------------------------------------------

    def _coefficients(self) -> np.ndarray:
        """Per-source-basis-state scalar: phase * i^{#Y} * (-1)^{popcount(b & z)}."""
        dim = 1 << self.n
        sign = np.ones(dim)
        for pos in range(self.n):
            if (self.z_bits >> pos) & 1:
                sign *= 1 - 2 * ((np.arange(dim) >> pos) & 1)
        n_y = (self.x_bits & self.z_bits).bit_count()
        return (self.phase * _PHASES[n_y % 4]) * sign

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Return P |psi> exactly; permutes amplitudes and applies signs."""
        psi = np.asarray(psi)
        dim = 1 << self.n
        if psi.shape != (dim,):
            raise ValueError(f"state has dimension {psi.shape}, expected ({dim},)")
        scaled = self._coefficients() * psi
        if self.x_bits == 0:
            return scaled
        return scaled[np.arange(dim) ^ self.x_bits]

    def conjugate_density(self, rho: np.ndarray) -> np.ndarray:
        """Return P rho P^dagger."""
        rho = np.asarray(rho)
        dim = 1 << self.n
        if rho.shape != (dim, dim):
            raise ValueError(f"density has shape {rho.shape}, expected ({dim}, {dim})")
        coef = self._coefficients()
        out = rho * np.outer(coef, coef.conj())
        if self.x_bits:
            idx = np.arange(dim) ^ self.x_bits
            out = out[np.ix_(idx, idx)]
        return out

    def diagonal(self) -> np.ndarray:
        """Eigenvalue of each computational basis state, for diagonal strings."""
        if self.x_bits:
            raise ValueError("string has X/Y factors and is not diagonal")
        return self._coefficients()

    def to_matrix(self) -> np.ndarray:
        """Dense matrix; intended for cross-checks, not hot paths."""
        dim = 1 << self.n
        coef = self._coefficients()
        out = np.zeros((dim, dim), dtype=complex)
        src = np.arange(dim)
        out[src ^ self.x_bits, src] = coef
        return out
