"""Exact simulation of a nine-qubit logical Rabi oscillation under scheduled QEC.

The package simulates, at full 512-dimensional exactness, a Shor-code register
driven by an always-on diagonal Hamiltonian whose three-qubit term rotates the
logical qubit.  It provides the error-correction schedule that protects the
discrete logical rotation against single-qubit depolarizing noise, together
with first-order analytic predictions used to cross-validate the simulation.
"""

from rabiqec.pauli import PauliString

__all__ = ["PauliString"]

__version__ = "0.1.0"
