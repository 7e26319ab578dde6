import numpy as np
import pytest

from latentlink.errors import DimensionMismatchError, NonHermitianError, NonSquareError
from latentlink.linalg import (
    I2,
    KET_PLUS,
    PAULIS,
    X,
    Y,
    Z,
    dagger,
    eigvalsh_2x2,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    kron,
    max_entangled_ket,
    partial_trace,
    partial_transpose,
    projector,
    random_density,
    random_unitary,
    singular_values,
)

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def random_hermitian(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + dagger(g)) / 2


class TestHermitianEigenvalues:
    def test_pauli_z(self):
        np.testing.assert_allclose(hermitian_eigenvalues(Z), [1.0, -1.0], atol=1e-14)

    def test_scalar_4x4(self):
        m = kron(I2, I2) / 4
        np.testing.assert_allclose(hermitian_eigenvalues(m), [0.25] * 4, atol=1e-14)

    def test_partial_transpose_of_max_entangled(self):
        pt = partial_transpose(projector(max_entangled_ket(2)), (2, 2), "B")
        np.testing.assert_allclose(hermitian_eigenvalues(pt), [0.5, 0.5, 0.5, -0.5], atol=1e-12)

    def test_rejects_non_square(self):
        with pytest.raises(NonSquareError):
            hermitian_eigenvalues(np.zeros((2, 3)))

    def test_rejects_non_hermitian(self):
        m = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(NonHermitianError):
            hermitian_eigenvalues(m)

    def test_symmetrizes_within_tolerance(self):
        m = np.array([[1.0, 0.5 + 1e-12j], [0.5 - 3e-12j, 2.0]])
        vals = hermitian_eigenvalues(m)
        assert vals[0] > vals[1]

    def test_sum_equals_trace_and_reconstruction(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            d = int(rng.choice([2, 4, 8]))
            m = random_hermitian(rng, d)
            vals, vecs = hermitian_eigensystem(m)
            assert abs(vals.sum() - np.trace(m).real) < 1e-9
            rebuilt = (vecs * vals) @ dagger(vecs)
            assert np.abs(rebuilt - m).max() < 1e-9
            assert np.all(np.diff(vals) <= 1e-12)

    def test_closed_form_2x2_agrees_with_general_solver(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            m = random_hermitian(rng, 2)
            np.testing.assert_allclose(eigvalsh_2x2(m), hermitian_eigenvalues(m), atol=1e-10)


class TestSingularValues:
    def test_identity(self):
        np.testing.assert_allclose(singular_values(I2), [1.0, 1.0], atol=1e-14)

    def test_pauli_sum_interference_operator(self):
        # oracle: eigenvalues of F^dag F by the independent closed-form 2x2 solver
        f = (I2 + X + Y + Z) / 4
        expected = np.sqrt(eigvalsh_2x2(dagger(f) @ f))
        np.testing.assert_allclose(singular_values(f), expected, atol=1e-12)
        np.testing.assert_allclose(
            singular_values(f),
            [np.sqrt((2 + np.sqrt(3)) / 8), np.sqrt((2 - np.sqrt(3)) / 8)],
            atol=1e-12,
        )

    def test_diagonal(self):
        np.testing.assert_allclose(singular_values(np.diag([0.7, 0.2])), [0.7, 0.2], atol=1e-14)

    def test_rejects_non_square(self):
        with pytest.raises(NonSquareError):
            singular_values(np.zeros((3, 2)))

    def test_unitary_invariance(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            d = int(rng.choice([2, 4]))
            m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            u, w = random_unitary(rng, d), random_unitary(rng, d)
            np.testing.assert_allclose(singular_values(u @ m @ w), singular_values(m), atol=1e-9)


class TestKron:
    def test_z_with_identity(self):
        np.testing.assert_allclose(kron(Z, I2), np.diag([1, 1, -1, -1]), atol=1e-14)

    def test_trace_multiplicative(self):
        rng = np.random.default_rng(14)
        omega = random_density(rng, 2)
        m = kron(projector(np.array([1, 0])), omega)
        assert abs(np.trace(m) - np.trace(omega)) < 1e-12

    def test_involutions(self):
        m = kron(X, Z)
        np.testing.assert_allclose(m @ m, np.eye(4), atol=1e-14)


class TestPartialTranspose:
    def test_product_state(self):
        rng = np.random.default_rng(15)
        sigma, tau = random_density(rng, 2), random_density(rng, 2)
        np.testing.assert_allclose(
            partial_transpose(kron(sigma, tau), (2, 2), "B"), kron(sigma, tau.T), atol=1e-12
        )
        np.testing.assert_allclose(
            partial_transpose(kron(sigma, tau), (2, 2), "A"), kron(sigma.T, tau), atol=1e-12
        )

    def test_max_entangled_gives_swap(self):
        pt = partial_transpose(projector(max_entangled_ket(2)), (2, 2), "B")
        np.testing.assert_allclose(pt, SWAP / 2, atol=1e-14)

    def test_exact_involution(self):
        rng = np.random.default_rng(16)
        m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        for sub in ("A", "B"):
            twice = partial_transpose(partial_transpose(m, (2, 4), sub), (2, 4), sub)
            assert np.array_equal(twice, m)

    def test_trace_preserved(self):
        rng = np.random.default_rng(17)
        m = random_density(rng, 4)
        assert abs(np.trace(partial_transpose(m, (2, 2), "A")) - 1) < 1e-12

    def test_rejects_bad_dims(self):
        with pytest.raises(DimensionMismatchError):
            partial_transpose(np.eye(4), (2, 3), "A")


class TestPartialTrace:
    def test_control_of_product(self):
        rng = np.random.default_rng(18)
        omega = random_density(rng, 2)
        out = partial_trace(kron(I2 / 2, omega), (2, 2), "A")
        np.testing.assert_allclose(out, I2 / 2, atol=1e-12)

    def test_product_rule(self):
        rng = np.random.default_rng(19)
        sigma = random_density(rng, 2)
        tau = 0.7 * random_density(rng, 2)  # non-unit trace on purpose
        np.testing.assert_allclose(
            partial_trace(kron(sigma, tau), (2, 2), "A"), sigma * np.trace(tau), atol=1e-12
        )

    def test_max_entangled_marginal(self):
        out = partial_trace(projector(max_entangled_ket(2)), (2, 2), "B")
        np.testing.assert_allclose(out, I2 / 2, atol=1e-14)

    def test_trace_preserved(self):
        rng = np.random.default_rng(20)
        m = random_density(rng, 8)
        for keep, dims in (("A", (2, 4)), ("B", (4, 2))):
            assert abs(np.trace(partial_trace(m, dims, keep)) - 1) < 1e-12

    def test_control_marginal_of_effective_output_is_mixture(self):
        # derived from the two-time definition: the control marginal must be a
        # mixture of omega and Z omega Z for any symmetric joint and pure omega
        from latentlink.channels import PAIR_SWAP, effective_single, pauli_correlated

        rng = np.random.default_rng(21)
        omega = projector(KET_PLUS)
        spec = pauli_correlated(rng.uniform(0, 2 * np.pi, 4), PAIR_SWAP)
        ch = effective_single(spec, omega)
        for _ in range(5):
            out = ch.apply(random_density(rng, 2))
            control = partial_trace(out, (2, 2), "B")
            weight = (KET_PLUS.conj() @ control @ KET_PLUS).real
            mixture = weight * omega + (1 - weight) * (Z @ omega @ Z)
            np.testing.assert_allclose(control, mixture, atol=1e-10)

    def test_rejects_bad_dims(self):
        with pytest.raises(DimensionMismatchError):
            partial_trace(np.eye(6), (2, 2), "A")
