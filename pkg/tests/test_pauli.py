import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rabiqec.pauli import PauliString

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
DENSE = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def dense(p: PauliString) -> np.ndarray:
    out = np.array([[p.phase]], dtype=complex)
    for i in range(1, p.n + 1):
        out = np.kron(out, DENSE[p.letter(i)])
    return out


def random_pauli(rng, n, with_phase=True):
    x = int(rng.integers(0, 1 << n))
    z = int(rng.integers(0, 1 << n))
    k = int(rng.integers(0, 4)) if with_phase else 0
    return PauliString(n, x, z, k)


@st.composite
def paulis(draw, n=4):
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    k = draw(st.integers(0, 3))
    return PauliString(n, x, z, k)


class TestConstruction:
    def test_logical_x_operator(self):
        p = PauliString.from_terms([(1, "Z"), (4, "Z"), (7, "Z")], n=9)
        assert p.weight == 3
        assert p.phase == 1
        assert str(p) == "Z1 Z4 Z7"

    def test_empty_terms_is_identity(self):
        p = PauliString.from_terms([], n=9)
        assert p.weight == 0
        assert str(p) == "I"

    def test_duplicate_index_rejected(self):
        with pytest.raises(ValueError):
            PauliString.from_terms([(2, "X"), (2, "Z")], n=9)

    def test_out_of_range_index_rejected(self):
        with pytest.raises(ValueError):
            PauliString.from_terms([(10, "X")], n=9)

    def test_string_roundtrip(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            p = random_pauli(rng, 9)
            assert PauliString.from_string(str(p), n=9) == p

    def test_parse_phase_prefixes(self):
        assert PauliString.from_string("-i X2 Z5", n=6).phase == -1j
        assert PauliString.from_string("+ Z1", n=3).phase == 1
        assert PauliString.from_string("I", n=3) == PauliString.identity(3)


class TestAlgebra:
    def test_single_qubit_products(self):
        x1 = PauliString.from_terms([(1, "X")], n=1)
        z1 = PauliString.from_terms([(1, "Z")], n=1)
        y1 = PauliString.from_terms([(1, "Y")], n=1)
        assert x1 * z1 == PauliString(1, 1, 1, 3)  # -i Y
        assert (x1 * z1).phase == -1j
        assert z1 * x1 == PauliString(1, 1, 1, 1)  # +i Y
        assert x1 * y1 == PauliString(1, 0, 1, 1)  # +i Z

    def test_pair_triple_product_is_identity(self):
        n = 9
        z14 = PauliString.from_terms([(1, "Z"), (4, "Z")], n=n)
        z47 = PauliString.from_terms([(4, "Z"), (7, "Z")], n=n)
        z71 = PauliString.from_terms([(7, "Z"), (1, "Z")], n=n)
        assert z14 * z47 * z71 == PauliString.identity(n)

    def test_involution(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            p = random_pauli(rng, 9, with_phase=False)
            k = int(rng.integers(0, 2)) * 2  # phase +1 or -1
            p = PauliString(p.n, p.x_bits, p.z_bits, k)
            assert p * p == PauliString.identity(9)

    def test_mismatched_sizes_rejected(self):
        with pytest.raises(ValueError):
            PauliString.identity(3) * PauliString.identity(4)
        with pytest.raises(ValueError):
            PauliString.identity(3).commutes_with(PauliString.identity(4))

    def test_multiply_against_dense_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a = random_pauli(rng, 3)
            b = random_pauli(rng, 3)
            np.testing.assert_allclose(dense(a * b), dense(a) @ dense(b), atol=1e-14)

    def test_multiply_against_dense_oracle_nine_qubits(self):
        rng = np.random.default_rng(12)
        for _ in range(5):
            a = random_pauli(rng, 9)
            b = random_pauli(rng, 9)
            np.testing.assert_allclose(dense(a * b), dense(a) @ dense(b), atol=1e-14)

    @settings(max_examples=200, deadline=None)
    @given(paulis(), paulis())
    def test_commutes_xor_anticommutes(self, a, b):
        ab, ba = a * b, b * a
        if a.commutes_with(b):
            assert ab == ba
        else:
            assert ab == PauliString(ba.n, ba.x_bits, ba.z_bits, (ba.phase_power + 2) % 4)

    @settings(max_examples=100, deadline=None)
    @given(paulis(), paulis(), paulis())
    def test_associativity(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    def test_known_commutators(self):
        z1 = PauliString.from_terms([(1, "Z")], n=9)
        xl = PauliString.from_terms([(1, "Z"), (4, "Z"), (7, "Z")], n=9)
        x1 = PauliString.from_terms([(1, "X")], n=9)
        assert z1.commutes_with(xl)
        assert not x1.commutes_with(z1)
        assert xl.commutes_with(PauliString.identity(9))


class TestStateAction:
    def test_apply_matches_dense(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            p = random_pauli(rng, 4)
            psi = rng.normal(size=16) + 1j * rng.normal(size=16)
            np.testing.assert_allclose(p.apply(psi), dense(p) @ psi, atol=1e-13)

    def test_apply_preserves_norm(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            p = random_pauli(rng, 9)
            psi = rng.normal(size=512) + 1j * rng.normal(size=512)
            psi /= np.linalg.norm(psi)
            assert abs(np.linalg.norm(p.apply(psi)) - 1) < 1e-13

    def test_identity_and_involution(self):
        rng = np.random.default_rng(23)
        psi = rng.normal(size=512) + 1j * rng.normal(size=512)
        ident = PauliString.identity(9)
        np.testing.assert_array_equal(ident.apply(psi), psi)
        z1 = PauliString.from_terms([(1, "Z")], n=9)
        np.testing.assert_allclose(z1.apply(z1.apply(psi)), psi, atol=0)

    def test_conjugate_density_matches_dense(self):
        rng = np.random.default_rng(24)
        for _ in range(10):
            p = random_pauli(rng, 3)
            a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
            rho = a @ a.conj().T
            m = dense(p)
            np.testing.assert_allclose(
                p.conjugate_density(rho), m @ rho @ m.conj().T, atol=1e-12
            )

    def test_diagonal_of_z_string(self):
        p = PauliString.from_string("Z1 Z4 Z7", n=9)
        d = p.diagonal()
        np.testing.assert_allclose(np.diag(dense(p)), d, atol=0)
        with pytest.raises(ValueError):
            PauliString.from_string("X1", n=9).diagonal()

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            PauliString.identity(9).apply(np.zeros(8))
