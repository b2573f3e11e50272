import numpy as np
import pytest

from rabiqec.pauli import PauliString
from rabiqec import states
from rabiqec.shor import (
    build_shor_code,
    in_code_space,
    kl_check,
    min_weight_logical_x,
    single_qubit_errors,
)


@pytest.fixture(scope="module")
def code():
    return build_shor_code()


class TestLogicalBasis:
    def test_normalized_and_orthogonal(self, code):
        assert abs(np.linalg.norm(code.logical_zero) - 1) < 1e-12
        assert abs(np.linalg.norm(code.logical_one) - 1) < 1e-12
        assert abs(np.vdot(code.logical_zero, code.logical_one)) < 1e-12

    def test_all_zero_amplitude(self, code):
        assert abs(code.logical_zero[0] - 2**-1.5) < 1e-14

    def test_first_block_ones_amplitude_in_logical_one(self, code):
        idx = 0b111000000
        assert abs(code.logical_one[idx] - (-(2**-1.5))) < 1e-14

    def test_support_size(self, code):
        # the triple product of two-term blocks expands to 8 basis states
        assert np.count_nonzero(code.logical_zero) == 8
        assert np.count_nonzero(code.logical_one) == 8

    def test_stabilizers_fix_both_logical_states(self, code):
        for gen in code.bit_stabilizers + code.phase_stabilizers:
            for v in (code.logical_zero, code.logical_one):
                np.testing.assert_allclose(gen.apply(v), v, atol=1e-12)

    def test_logical_x_swaps_basis(self, code):
        np.testing.assert_allclose(code.logical_x.apply(code.logical_zero), code.logical_one, atol=1e-12)
        np.testing.assert_allclose(code.logical_x.apply(code.logical_one), code.logical_zero, atol=1e-12)

    def test_logical_z_and_y(self, code):
        np.testing.assert_allclose(code.logical_z.apply(code.logical_zero), code.logical_zero, atol=1e-12)
        np.testing.assert_allclose(code.logical_z.apply(code.logical_one), -code.logical_one, atol=1e-12)
        np.testing.assert_allclose(
            code.logical_y.apply(code.logical_zero), 1j * code.logical_one, atol=1e-12
        )

    def test_projector(self, code):
        p = code.projector
        np.testing.assert_allclose(p @ p, p, atol=1e-12)
        np.testing.assert_allclose(p, p.conj().T, atol=1e-12)
        expected = np.outer(code.logical_zero, code.logical_zero.conj()) + np.outer(
            code.logical_one, code.logical_one.conj()
        )
        np.testing.assert_allclose(p, expected, atol=1e-14)

    def test_generators_commute(self, code):
        gens = code.bit_stabilizers + code.phase_stabilizers
        for a in gens:
            for b in gens:
                assert a.commutes_with(b)
            assert code.logical_x.commutes_with(a)

    def test_code_weight(self, code):
        rng = np.random.default_rng(2)
        psi = code.random_code_state(rng)
        assert abs(code.code_weight(psi) - 1) < 1e-12
        assert in_code_space(psi)
        z1 = PauliString.from_string("Z1", n=9)
        assert code.code_weight(z1.apply(psi)) < 1e-12


class TestKnillLaflamme:
    def test_all_single_qubit_errors_pass(self, code):
        report = kl_check(code, single_qubit_errors())
        assert len(report.operators) == 28
        assert report.satisfied
        np.testing.assert_allclose(report.chi, report.chi.conj().T, atol=1e-12)

    def test_stabilizer_pair_entry(self, code):
        ident = PauliString.identity(9)
        z1z2 = PauliString.from_string("Z1 Z2", n=9)
        report = kl_check(code, [ident, z1z2])
        assert report.satisfied
        assert abs(report.chi[0, 1] - 1) < 1e-12

    def test_single_x_entry_vanishes(self, code):
        # P_c X1 P_c computed directly in the 512-dim space is zero
        ident = PauliString.identity(9)
        x1 = PauliString.from_string("X1", n=9)
        report = kl_check(code, [ident, x1])
        assert report.satisfied
        assert abs(report.chi[0, 1]) < 1e-12
        m = code.projector @ x1.to_matrix() @ code.projector
        assert np.abs(m).max() < 1e-12

    def test_logical_x_pair_violates(self, code):
        # a weight-2 pair multiplying to something off-code-space-diagonal
        # (X-type logical action) must be flagged
        z1 = PauliString.from_string("Z1", n=9)
        z4z7 = PauliString.from_string("Z4 Z7", n=9)
        report = kl_check(code, [z1, z4z7])
        assert not report.satisfied

    def test_weight_one_sandwich_structure(self, code):
        # P_c E P_c is 0 or +/- P_c for every weight-1 Pauli
        for err in single_qubit_errors(include_identity=False):
            block = code.logical_block(err.to_matrix())
            value = 0.5 * np.trace(block)
            assert abs(block[0, 1]) < 1e-12 and abs(block[1, 0]) < 1e-12
            assert abs(block[0, 0] - block[1, 1]) < 1e-12
            assert min(abs(value), abs(abs(value) - 1)) < 1e-12


class TestMinWeightLogicalX:
    def test_no_weight_two_logical_x(self, code):
        assert min_weight_logical_x(code, max_weight=2) is None

    def test_weight_three_found(self, code):
        p = min_weight_logical_x(code, max_weight=3)
        assert p is not None
        assert p.weight == 3
        np.testing.assert_allclose(np.abs(np.vdot(code.logical_one, p.apply(code.logical_zero))), 1, atol=1e-12)

    def test_degenerate_representative(self, code):
        z369 = PauliString.from_string("Z3 Z6 Z9", n=9)
        np.testing.assert_allclose(z369.apply(code.logical_zero), code.logical_one, atol=1e-12)
        np.testing.assert_allclose(z369.apply(code.logical_one), code.logical_zero, atol=1e-12)
