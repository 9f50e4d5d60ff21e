"""Tests for the mechanical memory write pulse."""

import logging
import math

import numpy as np
import pytest

from phonon_bs.core.errors import ConfigValidationError, IntegrationDivergedError, InvalidArgumentError
from phonon_bs.core.hilbert import (
    coherent_ket,
    fock_ket,
    ket_fidelity,
    ket_to_dm,
    number_op,
    state_fidelity,
    truncation_dim,
)
from phonon_bs.core.memory_prep import (
    MemoryPrepParams,
    adiabatic_amplitude,
    cavity_state,
    cavity_steady_state,
    mechanical_state,
    memory_condition,
    memory_dims,
    memory_fidelity_trace,
    memory_me_evolve,
    swap_final_state,
)


def boundary_params(**overrides) -> MemoryPrepParams:
    """gA = π/2 and ΓT = π/20: the memory condition holds with margin 10."""
    values = dict(g=0.05, kappa1=0.1, kappa2=0.01, epsilon=0.0025, alpha_s=20.0, pulse_T=math.pi / 2)
    values.update(overrides)
    return MemoryPrepParams(**values)


class TestParams:

    def test_derived_quantities(self):
        p = boundary_params()
        assert p.Gamma == pytest.approx(0.1)
        assert p.g_tilde == pytest.approx(math.pi / 2)
        assert p.alpha0 == pytest.approx(-0.5j)
        assert p.loaded_amplitude == pytest.approx(-0.5)

    def test_square_pulse(self):
        p = boundary_params()
        assert p.alpha(0.0) == 20.0
        assert p.alpha(p.pulse_T) == 0.0
        assert p.theta(2 * p.pulse_T) == 1.0

    def test_infinite_cavity_one_damping_switches_jumps_off(self):
        assert boundary_params(kappa1=math.inf).Gamma == 0.0

    def test_drive_without_damping(self):
        with pytest.raises(ConfigValidationError) as info:
            boundary_params(kappa2=0.0)
        assert info.value.field == "initial_alpha"

    def test_explicit_amplitude_overrides_drive(self):
        assert boundary_params(kappa2=0.0, initial_alpha=0.3).alpha0 == 0.3

    def test_adiabatic_amplitude(self):
        assert adiabatic_amplitude(1.0, 4.0) == pytest.approx(1.0)
        p = MemoryPrepParams.from_input(E=0.5, g=0.05, kappa1=0.25, kappa2=0.01, epsilon=0.0, pulse_T=1.0)
        assert p.alpha_s == pytest.approx(2.0)
        with pytest.raises(InvalidArgumentError):
            adiabatic_amplitude(1.0, 0.0)


class TestMemoryCondition:

    def test_boundary_holds(self):
        cond = memory_condition(boundary_params())
        assert cond.satisfied
        assert cond.margin == pytest.approx(10.0)

    def test_strong_jumps_violate(self):
        cond = memory_condition(boundary_params(kappa1=0.01))
        assert not cond.satisfied
        assert cond.margin == pytest.approx(1.0)

    def test_no_jumps(self):
        assert memory_condition(boundary_params(kappa1=math.inf)).margin == math.inf


class TestIdealSwap:

    def test_half_swap_moves_amplitude_to_mechanics(self):
        alpha0 = 0.5
        dims = memory_dims(alpha0)
        psi = swap_final_state(alpha0, math.pi / 2)
        expected = np.kron(fock_ket(0, dims[0]), coherent_ket(-1j * alpha0, dims[1]))
        assert ket_fidelity(psi, expected) == pytest.approx(1.0, abs=1e-10)

    def test_full_swap_returns_with_sign_flip(self):
        alpha0 = 0.5
        dims = memory_dims(alpha0)
        psi = swap_final_state(alpha0, math.pi)
        expected = np.kron(coherent_ket(-alpha0, dims[0]), fock_ket(0, dims[1]))
        assert ket_fidelity(psi, expected) == pytest.approx(1.0, abs=1e-10)

    def test_single_photon_input(self):
        dims = (3, 3)
        psi = swap_final_state(0.0, math.pi / 2, dims=dims, input_ket=fock_ket(1, 3))
        expected = -1j * np.kron(fock_ket(0, 3), fock_ket(1, 3))
        np.testing.assert_allclose(psi, expected, atol=1e-12)

    def test_input_ket_shape(self):
        with pytest.raises(InvalidArgumentError):
            swap_final_state(0.0, 1.0, dims=(3, 3), input_ket=fock_ket(1, 4))


class TestMasterEquation:

    def test_unitary_limit_matches_swap(self):
        p = boundary_params(kappa1=math.inf, kappa2=0.0, epsilon=0.0, initial_alpha=0.5)
        rho = memory_me_evolve(p, dt=1e-3)
        psi = swap_final_state(0.5, p.g_tilde)
        np.testing.assert_allclose(rho, ket_to_dm(psi), atol=1e-8)

    def test_bare_cavity_decay(self):
        p = MemoryPrepParams(g=0.0, kappa1=math.inf, kappa2=0.5, epsilon=0.0, alpha_s=0.0, pulse_T=1.0)
        dims = (3, 3)
        rho0 = ket_to_dm(np.kron(fock_ket(1, 3), fock_ket(0, 3)))
        rho = memory_me_evolve(p, t_end=2.0, dt=1e-3, rho0=rho0, dims=dims)
        n2 = np.trace(cavity_state(rho, dims) @ number_op(3)).real
        assert n2 == pytest.approx(math.exp(-1.0), abs=1e-8)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)

    def test_lost_trace_is_logged_and_raised(self, caplog):
        p = MemoryPrepParams(g=0.0, kappa1=math.inf, kappa2=0.5, epsilon=0.0, alpha_s=0.0, pulse_T=1.0)
        rho0 = np.diag([2.0, 0.0, 0.0, 0.0]).astype(complex)
        logger = logging.getLogger("memory_prep_checks")
        with caplog.at_level(logging.ERROR, logger="memory_prep_checks"):
            with pytest.raises(IntegrationDivergedError) as info:
                memory_me_evolve(p, t_end=0.1, dt=0.05, rho0=rho0, dims=(2, 2), logger=logger)
        assert info.value.time == pytest.approx(0.1)
        assert "trace drift" in caplog.text

    @pytest.mark.slow
    def test_correlated_jumps_degrade_the_memory(self):
        fidelities = []
        for kappa1 in (math.inf, 0.1, 0.02):
            p = boundary_params(kappa1=kappa1, kappa2=0.0, epsilon=0.0, initial_alpha=0.5)
            dims = memory_dims(p.alpha0)
            rho = memory_me_evolve(p, dt=2e-3, dims=dims)
            target = coherent_ket(p.loaded_amplitude, dims[1])
            fidelities.append(state_fidelity(mechanical_state(rho, dims), target))
        assert fidelities[0] == pytest.approx(1.0, abs=1e-8)
        assert fidelities[0] > fidelities[1] > fidelities[2]

    def test_rejects_bad_step(self):
        with pytest.raises(InvalidArgumentError):
            memory_me_evolve(boundary_params(), dt=0.0)

    def test_rejects_wrong_initial_state(self):
        with pytest.raises(InvalidArgumentError):
            memory_me_evolve(boundary_params(), rho0=np.eye(4) / 4, dims=(3, 3))


class TestFidelityTrace:

    @pytest.mark.slow
    def test_boundary_write(self):
        rows = memory_fidelity_trace(boundary_params(), dt=1e-3)
        assert len(rows) == 41
        t0, f0, tr0 = rows[0]
        assert t0 == 0.0
        assert f0 == pytest.approx(math.exp(-0.25), abs=1e-9)
        assert rows[-1][0] == pytest.approx(math.pi / 2)
        assert rows[-1][1] >= 0.95
        for _, _, trace in rows:
            assert trace == pytest.approx(1.0, abs=1e-8)

    def test_custom_grid(self):
        rows = memory_fidelity_trace(boundary_params(), t_grid=[0.0, 0.5, 1.0], dt=1e-3)
        assert [r[0] for r in rows] == pytest.approx([0.0, 0.5, 1.0])

    def test_negative_times(self):
        with pytest.raises(InvalidArgumentError):
            memory_fidelity_trace(boundary_params(), t_grid=[-0.1, 0.5])


class TestCavityLoading:

    def test_relaxes_to_coherent_state(self):
        p = MemoryPrepParams(g=0.0, kappa1=math.inf, kappa2=0.5, epsilon=0.25, alpha_s=0.0, pulse_T=1.0)
        assert p.alpha0 == pytest.approx(-1j)
        dims = (truncation_dim(p.alpha0), 2)
        rho = cavity_steady_state(p, t_end=40.0, dt=1e-2, dims=dims)
        fidelity = state_fidelity(cavity_state(rho, dims), coherent_ket(p.alpha0, dims[0]))
        assert fidelity > 0.9999

    def test_needs_cavity_damping(self):
        p = boundary_params(kappa2=0.0, initial_alpha=0.5)
        with pytest.raises(InvalidArgumentError):
            cavity_steady_state(p, t_end=1.0)
