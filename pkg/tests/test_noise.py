import numpy as np
import pytest

from rabiqec import noise as noise_mod
from rabiqec import states
from rabiqec.hamiltonian import SystemParams, build_hamiltonian, evolve, evolve_density
from rabiqec.noise import (
    NoiseParams,
    depolarize_step,
    evolve_noisy,
    sample_trajectory,
    trajectory_ensemble,
)
from rabiqec.pauli import PauliString
from rabiqec.shor import build_shor_code


def kraus_depolarize_oracle(rho, gamma, n):
    """Literal Kraus-sum product channel, qubit by qubit."""
    out = np.asarray(rho, dtype=complex)
    for i in range(1, n + 1):
        acc = (1 - gamma) * out
        for letter in "XYZ":
            p = PauliString.from_terms([(i, letter)], n)
            acc = acc + (gamma / 3) * p.conjugate_density(out)
        out = acc
    return out


def random_density(rng, dim, rank=4):
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


class TestDepolarizeStep:
    def test_matches_kraus_oracle_small(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 3):
            rho = random_density(rng, 1 << n)
            got = depolarize_step(rho, 0.03)
            want = kraus_depolarize_oracle(rho, 0.03, n)
            np.testing.assert_allclose(got, want, atol=1e-14)

    def test_matches_kraus_oracle_nine_qubits(self):
        rng = np.random.default_rng(1)
        rho = random_density(rng, 512)
        got = depolarize_step(rho, 0.02)
        want = kraus_depolarize_oracle(rho, 0.02, 9)
        np.testing.assert_allclose(got, want, atol=1e-13)

    def test_maximally_mixed_fixed_point(self):
        rho = np.eye(512, dtype=complex) / 512
        np.testing.assert_allclose(depolarize_step(rho, 0.05), rho, atol=1e-15)

    def test_single_qubit_population_transfer(self):
        rho = np.diag([1.0, 0.0]).astype(complex)
        gamma = 0.04
        got = depolarize_step(rho, gamma)
        want = np.diag([1 - 2 * gamma / 3, 2 * gamma / 3])
        np.testing.assert_allclose(got, want, atol=1e-15)

    def test_zero_rate_is_identity(self):
        rng = np.random.default_rng(2)
        rho = random_density(rng, 64)
        np.testing.assert_array_equal(depolarize_step(rho, 0.0), rho)

    def test_rate_range_enforced(self):
        rho = np.eye(2, dtype=complex) / 2
        with pytest.raises(ValueError):
            depolarize_step(rho, 0.2)
        with pytest.raises(ValueError):
            depolarize_step(rho, -1e-3)

    def test_cptp_long_run_small_register(self):
        rng = np.random.default_rng(3)
        rho = random_density(rng, 16)
        for _ in range(10_000):
            rho = depolarize_step(rho, 0.01)
        assert abs(np.trace(rho).real - 1) < 1e-12
        assert np.abs(rho - rho.conj().T).max() < 1e-12
        assert np.linalg.eigvalsh(rho).min() >= -1e-10

    def test_cptp_nine_qubits(self):
        rng = np.random.default_rng(4)
        rho = random_density(rng, 512)
        for _ in range(500):
            before = np.trace(rho).real
            rho = depolarize_step(rho, 0.01)
            assert abs(np.trace(rho).real - before) < 1e-12
        assert np.linalg.eigvalsh(rho).min() >= -1e-10

    def test_commutes_with_z_string_conjugation(self):
        # conjugation by a Pauli Z string maps every sigma branch to a Pauli
        # of equal index, so the channel commutes exactly
        rng = np.random.default_rng(5)
        rho = random_density(rng, 512)
        zs = PauliString.from_string("Z1 Z5 Z9", n=9)
        a = depolarize_step(zs.conjugate_density(rho), 0.03)
        b = zs.conjugate_density(depolarize_step(rho, 0.03))
        assert np.abs(a - b).max() < 1e-12

    def test_commutes_with_single_qubit_z_rotations(self):
        # the single-qubit twirl is unitarily covariant, so the channel
        # commutes with any product of single-qubit Z rotations (the rotating
        # frame transformation is of this form)
        rng = np.random.default_rng(15)
        rho = random_density(rng, 512)
        from rabiqec.hamiltonian import rotating_frame

        zeta = tuple(rng.uniform(-2, 2, size=9))
        a = depolarize_step(rotating_frame(rho, zeta, 0.9), 0.03)
        b = rotating_frame(depolarize_step(rho, 0.03), zeta, 0.9)
        assert np.abs(a - b).max() < 1e-12

    @pytest.mark.skipif(not noise_mod._HAVE_NUMBA, reason="numba not installed")
    def test_numba_and_numpy_paths_agree(self):
        rng = np.random.default_rng(6)
        rho = random_density(rng, 512)
        a = rho.copy()
        b = rho.copy()
        noise_mod._depolarize_corrections_numba(a, 0.01, 9)
        noise_mod._depolarize_corrections_numpy(b, 0.01, 9)
        np.testing.assert_array_equal(a, b)


def first_order_prediction(psi0, t, energies, epsilon, nodes):
    """Quadrature oracle for the first-order noisy state: (1 - 9 eps t) rho_H
    plus the midpoint-rule integral of propagated single-Pauli errors."""
    rho = (1 - 9 * epsilon * t) * states.density_from_pure(evolve(energies, psi0, t))
    sigmas = [
        PauliString.from_terms([(i, letter)], 9)
        for i in range(1, 10)
        for letter in "XYZ"
    ]
    weight = epsilon / 3 * (t / nodes)
    acc = np.zeros((512, 512), dtype=complex)
    for start in range(0, nodes, 128):
        cols = []
        for j in range(start, min(start + 128, nodes)):
            t_mid = (j + 0.5) * t / nodes
            psi_t = evolve(energies, psi0, t_mid)
            for sig in sigmas:
                cols.append(evolve(energies, sig.apply(psi_t), t - t_mid))
        w = np.array(cols)
        acc += w.T @ w.conj()
    return rho + weight * acc


class TestEvolveNoisy:
    def test_zero_noise_equals_unitary(self):
        code = build_shor_code()
        params = SystemParams(omega=0.1, J=1.0)
        energies = build_hamiltonian(params)
        rho0 = states.density_from_pure(code.logical_zero)
        t = 0.9
        for n_steps in (1, 7, 32):
            got = evolve_noisy(rho0, t, energies, NoiseParams(0.0, n_steps))
            np.testing.assert_allclose(got, evolve_density(energies, rho0, t), atol=1e-13)

    def test_matches_first_order_formula(self):
        # the residual against the first-order formula is second order in the
        # total error weight 9*eps*t: bounded by (9 eps t)^2 and scaling
        # quadratically when eps is doubled
        code = build_shor_code()
        params = SystemParams(omega=0.1, J=1.0)
        energies = build_hamiltonian(params)
        t = params.tau
        rho0 = states.density_from_pure(code.logical_zero)
        distances = {}
        for eps_t in (1e-3, 2e-3):
            epsilon = eps_t / t
            got = evolve_noisy(rho0, t, energies, NoiseParams(epsilon, 1024))
            want = first_order_prediction(code.logical_zero, t, energies, epsilon, 1024)
            distances[eps_t] = states.trace_distance(got, want)
            assert distances[eps_t] <= 1.2 * (9 * eps_t) ** 2
        assert 4 * 0.85 < distances[2e-3] / distances[1e-3] < 4 * 1.15

    def test_self_convergence_ratio(self):
        code = build_shor_code()
        params = SystemParams(omega=0.1, J=1.0)
        energies = build_hamiltonian(params)
        t = params.tau
        epsilon = 0.01 / t
        rho0 = states.density_from_pure(code.logical_zero)
        results = {
            n: evolve_noisy(rho0, t, energies, NoiseParams(epsilon, n))
            for n in (64, 128, 256)
        }
        d1 = states.trace_distance(results[64], results[128])
        d2 = states.trace_distance(results[128], results[256])
        assert 2 * 0.8 < d1 / d2 < 2 * 1.2

    def test_rejects_coarse_substeps(self):
        rho = np.eye(512, dtype=complex) / 512
        with pytest.raises(ValueError):
            evolve_noisy(rho, 1.0, np.zeros(512), NoiseParams(1.0, 2))


class TestTrajectories:
    def test_zero_noise_trajectory(self):
        code = build_shor_code()
        params = SystemParams(omega=0.1, J=1.0)
        energies = build_hamiltonian(params)
        rec = sample_trajectory(code.logical_zero, 0.7, energies, NoiseParams(0.0, 16), seed=5)
        assert rec.events == []
        np.testing.assert_allclose(rec.final_state, evolve(energies, code.logical_zero, 0.7), atol=1e-13)

    def test_deterministic_given_seed(self):
        code = build_shor_code()
        energies = build_hamiltonian(SystemParams(omega=0.1, J=1.0))
        np_ = NoiseParams(0.5, 64)
        a = sample_trajectory(code.logical_zero, 1.0, energies, np_, seed=42, index=3)
        b = sample_trajectory(code.logical_zero, 1.0, energies, np_, seed=42, index=3)
        assert a.events == b.events
        np.testing.assert_array_equal(a.final_state, b.final_state)
        c = sample_trajectory(code.logical_zero, 1.0, energies, np_, seed=43, index=3)
        assert a.events != c.events or not np.array_equal(a.final_state, c.final_state)

    def test_event_times_strictly_increasing_per_qubit_step(self):
        code = build_shor_code()
        energies = build_hamiltonian(SystemParams(omega=0.1, J=1.0))
        rec = sample_trajectory(code.logical_zero, 1.0, energies, NoiseParams(2.0, 128), seed=1)
        times = [t for t, _, _ in rec.events]
        assert times == sorted(times)
        assert len(rec.events) > 0

    def test_ensemble_matches_single_trajectories(self):
        code = build_shor_code()
        energies = build_hamiltonian(SystemParams(omega=0.1, J=1.0))
        np_ = NoiseParams(1.0, 32)
        ens = trajectory_ensemble(
            code.logical_zero, 1.0, energies, np_, seed=9, num_trajectories=8, keep_states=True
        )
        for idx in range(8):
            rec = sample_trajectory(code.logical_zero, 1.0, energies, np_, seed=9, index=idx)
            np.testing.assert_allclose(ens.final_states[idx], rec.final_state, atol=1e-13)
            assert ens.event_counts[idx] == len(rec.events)

    def test_batch_size_independence(self):
        code = build_shor_code()
        energies = build_hamiltonian(SystemParams(omega=0.1, J=1.0))
        np_ = NoiseParams(1.0, 16)
        a = trajectory_ensemble(code.logical_zero, 1.0, energies, np_, seed=3, num_trajectories=50, batch_size=7)
        b = trajectory_ensemble(code.logical_zero, 1.0, energies, np_, seed=3, num_trajectories=50, batch_size=50)
        np.testing.assert_allclose(a.rho, b.rho, atol=1e-13)
        np.testing.assert_array_equal(a.event_counts, b.event_counts)

    def test_event_count_statistics(self):
        code = build_shor_code()
        energies = build_hamiltonian(SystemParams(omega=0.1, J=1.0))
        t = 1.0
        epsilon = 0.01
        num = 20_000
        ens = trajectory_ensemble(code.logical_zero, t, energies, NoiseParams(epsilon, 16), seed=11, num_trajectories=num)
        mean = ens.event_counts.mean()
        expected = 9 * epsilon * t
        stderr = np.sqrt(expected / num)
        assert abs(mean - expected) < 3 * stderr + 9 * (epsilon * t / 16)

    def test_ensemble_density_matches_channel(self):
        code = build_shor_code()
        params = SystemParams(omega=0.1, J=1.0)
        energies = build_hamiltonian(params)
        t = params.tau
        epsilon = 0.01 / t
        np_ = NoiseParams(epsilon, 32)
        num = 4000
        ens = trajectory_ensemble(code.logical_zero, t, energies, np_, seed=21, num_trajectories=num)
        rho0 = states.density_from_pure(code.logical_zero)
        target = evolve_noisy(rho0, t, energies, np_)
        assert states.trace_distance(ens.rho, target) <= 3 / np.sqrt(num)
