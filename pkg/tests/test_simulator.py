import numpy as np
import pytest

from lmgvqe import (
    NoiseModel,
    PauliString,
    ShotResult,
    ansatz_1q,
    ansatz_2q,
    expectation_from_counts,
    measure_term,
    run,
)
from lmgvqe.simulator import _X_BASIS_CHANGE, _Y_BASIS_CHANGE
from lmgvqe.pauli import PAULI_MATRICES

Z0 = PauliString(("Z",))
X0 = PauliString(("X",))
Y0 = PauliString(("Y",))


def sampled_expectation(term, theta, shots, noise=NoiseModel(), seed=0):
    result = measure_term(ansatz_1q(), [theta], term, shots, noise=noise, seed=seed)
    return expectation_from_counts(result, term)


class TestBasisChanges:
    def test_rotations_map_operators_to_z(self):
        z = PAULI_MATRICES["Z"]
        for u, op in ((_X_BASIS_CHANGE, PAULI_MATRICES["X"]), (_Y_BASIS_CHANGE, PAULI_MATRICES["Y"])):
            np.testing.assert_allclose(u @ op @ u.conj().T, z, atol=1e-12)

    @pytest.mark.parametrize("term,exact", [
        (Z0, lambda t: np.cos(t)),
        (X0, lambda t: np.sin(t)),
        (Y0, lambda t: 0.0),
    ])
    def test_sampled_mean_matches_exact_on_grid(self, term, exact):
        shots = 100_000
        for i, theta in enumerate(np.linspace(-np.pi, np.pi, 12)):
            mean, stderr = sampled_expectation(term, theta, shots, seed=100 + i)
            assert abs(mean - exact(theta)) <= 5 * max(stderr, 1e-3)


class TestMeasureTerm:
    def test_z_on_zero_state_is_deterministic(self):
        result = measure_term(ansatz_1q(), [0.0], Z0, 500)
        assert result.counts == {"0": 500}
        assert expectation_from_counts(result, Z0) == (1.0, 0.0)

    def test_equal_superposition_counts(self):
        result = measure_term(ansatz_1q(), [np.pi / 2], Z0, 20_000, seed=4)
        fraction = result.counts["0"] / result.shots
        assert abs(fraction - 0.5) <= 0.011  # 3 sigma binomial

    def test_readout_bias_on_basis_state(self):
        noise = NoiseModel(readout_p01=0.02)
        mean, _ = sampled_expectation(Z0, 0.0, 200_000, noise=noise, seed=9)
        assert mean == pytest.approx(1.0 - 2 * 0.02, abs=4.5e-3)

    def test_readout_affine_scaling(self):
        # <Z>_read = (1 - p01 - p10) <Z>_true + (p10 - p01)
        noise = NoiseModel(readout_p01=0.03, readout_p10=0.08)
        shots = 200_000
        for theta, seed in ((0.0, 1), (np.pi, 2)):
            true = np.cos(theta)
            mean, _ = sampled_expectation(Z0, theta, shots, noise=noise, seed=seed)
            expected = (1 - 0.03 - 0.08) * true + (0.08 - 0.03)
            assert mean == pytest.approx(expected, abs=5e-3)

    def test_readout_scaling_two_qubits(self):
        # independent flips: <Z0Z1> scales by (1 - p01 - p10) per qubit
        noise = NoiseModel(readout_p01=0.02, readout_p10=0.02)
        term = PauliString(("Z", "Z"))
        result = measure_term(ansatz_2q(), (0.0, 0.0, 0.0), term, 200_000, noise=noise, seed=3)
        mean, _ = expectation_from_counts(result, term)
        assert mean == pytest.approx((1 - 0.04) ** 2, abs=5e-3)

    def test_qubit_count_mismatch(self):
        with pytest.raises(ValueError):
            measure_term(ansatz_1q(), [0.0], PauliString(("Z", "Z")), 100)

    def test_shots_validated(self):
        with pytest.raises(ValueError):
            measure_term(ansatz_1q(), [0.0], Z0, 0)

    def test_seed_determinism(self):
        noise = NoiseModel(0.01, 0.02, 0.03)
        kwargs = dict(noise=noise, seed=13)
        a = measure_term(ansatz_2q(), (0.7, -0.4, 1.1), PauliString(("X", "Y")), 5000, **kwargs)
        b = measure_term(ansatz_2q(), (0.7, -0.4, 1.1), PauliString(("X", "Y")), 5000, **kwargs)
        assert a == b

    def test_different_seeds_differ(self):
        a = measure_term(ansatz_1q(), [1.0], Z0, 5000, seed=1)
        b = measure_term(ansatz_1q(), [1.0], Z0, 5000, seed=2)
        assert a != b

    def test_converges_to_exact_two_qubit(self):
        # 12-point grid over the two-qubit ansatz, all Hamiltonian term types
        rng = np.random.default_rng(17)
        terms = [PauliString(t) for t in (("X", "X"), ("Y", "Y"), ("Z", "X"), ("Z", "Z"))]
        for i in range(12):
            params = rng.uniform(-np.pi, np.pi, 3)
            state = run(ansatz_2q(), params)
            for j, term in enumerate(terms):
                result = measure_term(ansatz_2q(), params, term, 100_000, seed=1000 * i + j)
                mean, stderr = expectation_from_counts(result, term)
                from lmgvqe.pauli import string_matrix
                exact = float(np.vdot(state.amplitudes, string_matrix(term) @ state.amplitudes).real)
                assert abs(mean - exact) <= 5 * max(stderr, 1e-3)

    def test_cnot_noise_changes_distribution(self):
        term = PauliString(("Z", "I"))
        clean = measure_term(ansatz_2q(), (0.9, 0.4, -0.2), term, 50_000, seed=5)
        noisy = measure_term(
            ansatz_2q(), (0.9, 0.4, -0.2), term, 50_000,
            noise=NoiseModel(cnot_depolarizing=0.2), seed=5,
        )
        m_clean, _ = expectation_from_counts(clean, term)
        m_noisy, _ = expectation_from_counts(noisy, term)
        assert abs(m_noisy) < abs(m_clean)


class TestExpectationFromCounts:
    def test_identity_term(self):
        result = ShotResult({"0": 10}, 10)
        assert expectation_from_counts(result, PauliString(("I",))) == (1.0, 0.0)

    def test_symmetric_counts(self):
        result = ShotResult({"0": 10_000, "1": 10_000}, 20_000)
        mean, stderr = expectation_from_counts(result, Z0)
        assert mean == 0.0
        assert stderr == pytest.approx(np.sqrt(1.0 / 20_000), abs=1e-12)

    def test_even_parity_two_qubits(self):
        result = ShotResult({"00": 5000, "11": 5000}, 10_000)
        mean, stderr = expectation_from_counts(result, PauliString(("Z", "Z")))
        assert (mean, stderr) == (1.0, 0.0)

    def test_parity_restricted_to_active_qubits(self):
        result = ShotResult({"01": 100}, 100)
        mean, _ = expectation_from_counts(result, PauliString(("Z", "I")))
        assert mean == 1.0
        mean, _ = expectation_from_counts(result, PauliString(("I", "Z")))
        assert mean == -1.0


class TestNoiseModelValidation:
    def test_probability_ranges(self):
        with pytest.raises(ValueError):
            NoiseModel(readout_p01=1.0)
        with pytest.raises(ValueError):
            NoiseModel(readout_p10=-0.1)
        with pytest.raises(ValueError):
            NoiseModel(cnot_depolarizing=0.5)

    def test_counts_must_sum_to_shots(self):
        with pytest.raises(ValueError):
            ShotResult({"0": 3}, 4)
