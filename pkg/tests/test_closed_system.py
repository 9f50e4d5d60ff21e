"""Tests for the closed trilinear system and its SU(2) structure."""

import math

import numpy as np
import pytest

from phonon_bs.core.closed_system import (
    beam_splitter_unitary,
    branch_states,
    control_curves,
    dephasing_map_check,
    dressed_eigencheck,
    displaced_H,
    lab_frame_reduced_state,
    optical_pure_state,
    r_coefficients,
    reduced_optical_state,
    schwinger_ket,
    schwinger_levels,
    small_beta_fidelity,
    su2_generators,
    trilinear_H,
)
from phonon_bs.core.errors import InvalidArgumentError, InvalidDimensionError
from phonon_bs.core.hilbert import (
    ModeDims,
    check_density,
    dag,
    embed,
    evolution_operator,
    expm_apply,
    fock_ket,
    ket_to_dm,
    number_op,
    partial_trace,
)


class TestSU2:

    def test_casimir_on_single_photon_sector(self):
        gens = su2_generators(1)
        for m in (-0.5, 0.5):
            ket = schwinger_ket(0.5, m, 2, 2)
            np.testing.assert_allclose(gens.casimir() @ ket, 0.75 * ket, atol=1e-12)
            np.testing.assert_allclose(gens.Sz @ ket, m * ket, atol=1e-12)

    def test_commutation_relation(self):
        gens = su2_generators(2)
        comm = gens.Sx @ gens.Sy - gens.Sy @ gens.Sx
        for m in (-1.0, 0.0, 1.0):
            ket = schwinger_ket(1.0, m, 3, 3)
            np.testing.assert_allclose(comm @ ket, 1j * gens.Sz @ ket, atol=1e-12)

    def test_rejects_empty_sector(self):
        with pytest.raises(InvalidDimensionError):
            su2_generators(0)

    def test_rejects_short_truncation(self):
        with pytest.raises(InvalidDimensionError):
            su2_generators(3, 2, 4)

    def test_schwinger_levels(self):
        assert schwinger_levels(1.0, -1.0) == (2, 0)
        assert schwinger_levels(0.5, 0.5) == (0, 1)

    def test_invalid_schwinger_state(self):
        with pytest.raises(InvalidArgumentError):
            schwinger_levels(1.0, 0.5)


class TestTrilinearGenerator:

    def test_conserves_photon_number(self):
        dims = ModeDims(3, 3, 4)
        H = trilinear_H(0.7, dims)
        N = embed(number_op(3), 1, dims) + embed(number_op(3), 2, dims)
        np.testing.assert_allclose(H @ N - N @ H, 0.0, atol=1e-12)

    def test_hermitian(self, small_dims):
        H = trilinear_H(1.3, small_dims)
        np.testing.assert_allclose(H, H.conj().T)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_dressed_doublet(self, n):
        evals = dressed_eigencheck(n, g=0.7)
        np.testing.assert_allclose(evals, [-0.7 * math.sqrt(n), 0.7 * math.sqrt(n)], atol=1e-12)

    def test_dressed_doublet_needs_a_phonon(self):
        with pytest.raises(InvalidArgumentError):
            dressed_eigencheck(0)


class TestBeamSplitterUnitary:

    @pytest.mark.parametrize("theta", [0.3, math.pi / 4, 2.0])
    def test_unitary(self, theta):
        U = beam_splitter_unitary(theta, 3, 3)
        np.testing.assert_allclose(dag(U) @ U, np.eye(9), atol=1e-12)

    def test_full_swap(self):
        U = beam_splitter_unitary(math.pi / 2, 2, 2)
        out = U @ np.kron(fock_ket(1, 2), fock_ket(0, 2))
        np.testing.assert_allclose(out, -1j * np.kron(fock_ket(0, 2), fock_ket(1, 2)), atol=1e-12)

    def test_balanced_splitter_suppresses_coincidences(self):
        U = beam_splitter_unitary(math.pi / 4, 3, 3)
        assert abs(U[4, 4]) == pytest.approx(0.0, abs=1e-12)


class TestLabFrame:

    def test_agrees_with_displaced_frame(self):
        beta, g, t = 2.0, 0.3, 1.0
        rho0 = ket_to_dm(np.kron(fock_ket(1, 2), fock_ket(0, 2)))
        lab = lab_frame_reduced_state(rho0, beta, g, t, dm=30)

        dims = ModeDims(2, 2, 8)
        U = evolution_operator(displaced_H(g * beta, g, dims), t)
        P = np.kron(rho0, ket_to_dm(fock_ket(0, 8)))
        displaced = partial_trace(U @ P @ dag(U), (1, 2), dims)

        np.testing.assert_allclose(lab, displaced, atol=1e-8)
        assert np.trace(lab).real == pytest.approx(1.0, abs=1e-10)

    def test_no_coupling_keeps_the_state(self):
        rho0 = ket_to_dm(np.kron(fock_ket(1, 2), fock_ket(0, 2)))
        np.testing.assert_allclose(lab_frame_reduced_state(rho0, 1.0, 0.0, 3.0), rho0, atol=1e-12)


class TestBranchStates:

    def test_branch_norms_sum_to_one(self):
        psi0 = schwinger_ket(0.5, 0.5, 2, 2)
        phi0 = np.array([1.0, 0.0], dtype=complex)
        branches = branch_states(psi0, phi0, g=1.0, t=0.9)
        assert sorted(branches) == [-0.5, 0.5]
        total = sum(np.linalg.norm(phi) ** 2 for phi in branches.values())
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_gram_matrix_is_a_density_operator(self):
        psi0 = schwinger_ket(1.0, 0.0, 3, 3)
        phi0 = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2)
        R = r_coefficients(branch_states(psi0, phi0, g=1.0, t=1.3))
        np.testing.assert_allclose(R, R.conj().T, atol=1e-12)
        assert np.trace(R).real == pytest.approx(1.0, abs=1e-12)

    def test_reduced_state_matches_partial_trace(self):
        dims = ModeDims(2, 2, 3)
        psi0 = np.zeros(4, dtype=complex)
        psi0[[1, 2]] = 1 / math.sqrt(2)
        phi0 = np.array([1.0, 0.0, 0.0], dtype=complex)
        g, t = 0.8, 1.1

        R = r_coefficients(branch_states(psi0, phi0, g, t, dims))
        rho_branches = reduced_optical_state(R, 1, 2, 2)

        full = expm_apply(trilinear_H(g, dims), t, np.kron(psi0, phi0))
        rho_direct = partial_trace(ket_to_dm(full), (1, 2), dims)
        np.testing.assert_allclose(rho_branches, rho_direct, atol=1e-12)

    def test_rejects_mixed_sectors(self):
        psi0 = np.zeros(4, dtype=complex)
        psi0[[0, 1]] = 1 / math.sqrt(2)
        with pytest.raises(InvalidArgumentError):
            branch_states(psi0, np.array([1.0, 0.0]), g=1.0, t=1.0)


class TestControlCurves:

    def test_no_decoherence_at_zero_time(self):
        curves = control_curves([0.0])
        for key in ("R_0_1", "R_0_m1", "R_1_0", "R_m1_0"):
            assert curves[key][0] == pytest.approx(0.0, abs=1e-12)

    def test_bounded_and_symmetric(self):
        curves = control_curves(np.linspace(0.0, 2 * math.pi, 25))
        assert curves["gt"].shape == (25,)
        for key in ("R_0_1", "R_0_m1"):
            assert np.all(curves[key] <= 0.5 + 1e-12)
        np.testing.assert_allclose(curves["R_0_1"], curves["R_1_0"], atol=1e-12)
        np.testing.assert_allclose(curves["R_0_m1"], curves["R_m1_0"], atol=1e-12)


class TestSmallAmplitude:

    @pytest.mark.parametrize("beta", [0.05, 0.1, 0.2])
    def test_two_level_fidelity(self, beta):
        expected = math.exp(-beta**2) * (1 + beta**2)
        assert small_beta_fidelity(beta) == pytest.approx(expected, abs=1e-8)


class TestDephasingMap:

    def test_exact_state_is_physical(self):
        rho0 = optical_pure_state({(0, 1): 1.0, (1, 0): 1.0}, 2, 2)
        check = dephasing_map_check(rho0, theta=math.pi / 4, g=1.0, t=0.1)
        check_density(check.rho_exact)

    def test_perturbative_error_shrinks_faster_than_quadratic(self):
        rho0 = optical_pure_state({(0, 1): 1.0, (1, 0): 1.0}, 2, 2)
        coarse = dephasing_map_check(rho0, theta=math.pi / 4, g=1.0, t=0.1)
        fine = dephasing_map_check(rho0, theta=math.pi / 4, g=1.0, t=0.05)
        assert fine.deviation < 0.25 * coarse.deviation

    def test_rejects_non_positive_time(self):
        rho0 = optical_pure_state({(0, 1): 1.0}, 2, 2)
        with pytest.raises(InvalidArgumentError):
            dephasing_map_check(rho0, theta=0.3, g=1.0, t=0.0)
