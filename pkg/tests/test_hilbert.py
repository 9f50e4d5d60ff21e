"""Tests for truncated Fock-space operators and state utilities."""

import math

import numpy as np
import pytest

from phonon_bs.core.errors import (
    ContractViolationError,
    InvalidArgumentError,
    InvalidDimensionError,
    TruncationError,
)
from phonon_bs.core.hilbert import (
    ModeDims,
    annihilation,
    check_density,
    coherent_ket,
    dag,
    displacement,
    embed,
    evolution_operator,
    expm_apply,
    fock_ket,
    ket_to_dm,
    mode_operators,
    number_op,
    partial_trace,
    product_ket,
    tail_mass,
    trace_distance,
    trace_out,
    truncation_dim,
    truncation_ok,
)


class TestLadderOperators:

    def test_two_level_lowering(self):
        np.testing.assert_array_equal(annihilation(2), np.array([[0, 1], [0, 0]], dtype=complex))

    def test_matrix_elements(self):
        a = annihilation(4)
        for n in range(1, 4):
            assert a[n - 1, n] == pytest.approx(math.sqrt(n))

    def test_truncated_commutator(self):
        a = annihilation(10)
        comm = a @ dag(a) - dag(a) @ a
        expected = np.eye(10)
        expected[9, 9] = -9.0
        np.testing.assert_allclose(comm, expected, atol=1e-12)

    def test_number_operator(self):
        a = annihilation(5)
        np.testing.assert_allclose(dag(a) @ a, number_op(5), atol=1e-12)

    @pytest.mark.parametrize("dim", [0, 1, 2.5])
    def test_rejects_small_dimension(self, dim):
        with pytest.raises(InvalidDimensionError):
            annihilation(dim)

    def test_fock_ket_outside_truncation(self):
        with pytest.raises(InvalidDimensionError):
            fock_ket(3, 3)


class TestEmbedding:

    def test_mode_dims_rejects_single_level(self):
        with pytest.raises(InvalidDimensionError):
            ModeDims(2, 1, 3)

    def test_identity_embeds_to_identity(self, small_dims):
        out = embed(np.eye(small_dims.dm), "m", small_dims)
        np.testing.assert_allclose(out, np.eye(small_dims.total))

    def test_modes_commute(self, small_dims):
        a1, a2, b = mode_operators(small_dims)
        for x, y in ((a1, dag(a2)), (a1, b), (a2, dag(b))):
            np.testing.assert_allclose(x @ y - y @ x, 0.0, atol=1e-12)

    def test_embedded_number_reads_its_mode(self):
        dims = ModeDims(2, 2, 4)
        ket = product_ket([fock_ket(1, 2), fock_ket(0, 2), fock_ket(2, 4)])
        n_m = embed(number_op(4), "m", dims)
        n_1 = embed(number_op(2), 1, dims)
        np.testing.assert_allclose(n_m @ ket, 2 * ket)
        np.testing.assert_allclose(n_1 @ ket, ket)
        assert ket[dims.index(1, 0, 2)] == 1.0

    def test_wrong_operator_size(self, small_dims):
        with pytest.raises(InvalidDimensionError):
            embed(annihilation(3), 1, small_dims)

    def test_unknown_mode(self, small_dims):
        with pytest.raises(InvalidArgumentError):
            embed(annihilation(2), "x", small_dims)


class TestTruncation:

    @pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 1.5j])
    def test_truncation_rule(self, beta):
        dim = truncation_dim(beta)
        assert dim >= 2
        assert truncation_ok(beta, dim)
        assert tail_mass(beta, dim - 2) < 1e-10

    def test_vacuum(self):
        np.testing.assert_allclose(coherent_ket(0.0, truncation_dim(0.0)), fock_ket(0, truncation_dim(0.0)))

    def test_coherent_components(self):
        ket = coherent_ket(1.0, 25)
        assert ket[0] == pytest.approx(math.exp(-0.5), abs=1e-9)
        assert ket[1] == pytest.approx(math.exp(-0.5), abs=1e-9)
        assert np.linalg.norm(ket) == pytest.approx(1.0)

    def test_coherent_mean_number(self):
        ket = coherent_ket(2.0, 40)
        assert np.vdot(ket, number_op(40) @ ket).real == pytest.approx(4.0, abs=1e-8)

    def test_coherent_rejects_small_truncation(self):
        with pytest.raises(TruncationError) as info:
            coherent_ket(3.0, 5)
        assert info.value.tail_mass > 0


class TestDisplacement:

    def test_zero_displacement(self):
        np.testing.assert_allclose(displacement(0.0, 30), np.eye(30), atol=1e-12)

    def test_displaced_vacuum_is_coherent(self):
        ket = displacement(1.0, 30) @ fock_ket(0, 30)
        np.testing.assert_allclose(ket, coherent_ket(1.0, 30), atol=1e-8)

    def test_inverse(self):
        product = displacement(1.5, 40) @ displacement(-1.5, 40)
        np.testing.assert_allclose(product, np.eye(40), atol=1e-8)

    def test_shifts_lowering_operator(self):
        D = displacement(1.0, 30)
        b = annihilation(30)
        shifted = dag(D) @ b @ D
        np.testing.assert_allclose(shifted[:10, :10], (b + np.eye(30))[:10, :10], atol=1e-8)

    def test_rejects_small_truncation(self):
        with pytest.raises(TruncationError):
            displacement(2.0, 5)


class TestEvolution:

    def test_zero_time(self):
        rng = np.random.default_rng(7)
        M = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        H = M + dag(M)
        psi = rng.normal(size=6) + 1j * rng.normal(size=6)
        np.testing.assert_allclose(expm_apply(H, 0.0, psi), psi, atol=1e-12)

    def test_norm_preserved(self):
        rng = np.random.default_rng(11)
        M = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
        H = M + dag(M)
        psi = rng.normal(size=12) + 1j * rng.normal(size=12)
        out = expm_apply(H, 3.7, psi)
        assert np.linalg.norm(out) == pytest.approx(np.linalg.norm(psi), rel=1e-12)

    def test_beam_splitter_swap(self):
        dims = ModeDims(2, 2, 2)
        a1, a2, _ = mode_operators(dims)
        H = dag(a1) @ a2 + a1 @ dag(a2)
        psi = np.zeros(dims.total, dtype=complex)
        psi[dims.index(0, 1, 0)] = 1.0
        out = expm_apply(H, math.pi / 2, psi)
        expected = np.zeros(dims.total, dtype=complex)
        expected[dims.index(1, 0, 0)] = -1j
        np.testing.assert_allclose(out, expected, atol=1e-12)

    def test_operator_matches_apply(self):
        H = np.array([[1.0, 0.5j], [-0.5j, -1.0]])
        psi = np.array([1.0, 0.0], dtype=complex)
        np.testing.assert_allclose(evolution_operator(H, 0.8) @ psi, expm_apply(H, 0.8, psi), atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ContractViolationError):
            expm_apply(annihilation(3), 1.0, fock_ket(0, 3))


class TestPartialTrace:

    def test_product_operator(self):
        A = np.diag([0.25, 0.75]).astype(complex)
        B = np.arange(9, dtype=complex).reshape(3, 3)
        np.testing.assert_allclose(trace_out(np.kron(A, B), (2, 3), [1]), B)
        np.testing.assert_allclose(trace_out(np.kron(A, B), (2, 3), [0]), A * np.trace(B))

    def test_bell_state_marginal(self):
        dims = ModeDims(2, 2, 2)
        psi = np.zeros(dims.total, dtype=complex)
        psi[dims.index(0, 1, 0)] = 1 / math.sqrt(2)
        psi[dims.index(1, 0, 0)] = 1 / math.sqrt(2)
        rho_1 = partial_trace(ket_to_dm(psi), [1], dims)
        np.testing.assert_allclose(rho_1, np.eye(2) / 2, atol=1e-12)
        rho_m = partial_trace(ket_to_dm(psi), ["m"], dims)
        np.testing.assert_allclose(rho_m, np.diag([1.0, 0.0]), atol=1e-12)

    def test_trace_preserved(self, small_dims):
        rng = np.random.default_rng(3)
        psi = rng.normal(size=small_dims.total) + 1j * rng.normal(size=small_dims.total)
        rho = ket_to_dm(psi / np.linalg.norm(psi))
        for keep in ([1], [2, "m"], [1, 2, "m"]):
            assert np.trace(partial_trace(rho, keep, small_dims)).real == pytest.approx(1.0)

    def test_empty_keep(self, small_dims):
        with pytest.raises(InvalidArgumentError):
            partial_trace(np.eye(small_dims.total), [], small_dims)

    def test_shape_mismatch(self):
        with pytest.raises(InvalidDimensionError):
            trace_out(np.eye(5), (2, 3), [0])


class TestDensityChecks:

    def test_pure_state_passes(self):
        check_density(ket_to_dm(coherent_ket(0.5, truncation_dim(0.5))))

    def test_non_hermitian_fails(self):
        with pytest.raises(ContractViolationError):
            check_density(np.array([[0.5, 0.1], [0.0, 0.5]], dtype=complex))

    def test_wrong_trace_fails(self):
        with pytest.raises(ContractViolationError):
            check_density(np.eye(2, dtype=complex))

    def test_negative_eigenvalue_fails(self):
        with pytest.raises(ContractViolationError):
            check_density(np.diag([1.2, -0.2]).astype(complex))

    def test_orthogonal_states_are_distinguishable(self):
        assert trace_distance(ket_to_dm(fock_ket(0, 3)), ket_to_dm(fock_ket(1, 3))) == pytest.approx(1.0)
