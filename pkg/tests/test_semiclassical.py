"""Tests for the classical-controller closed forms and their quadrature oracles."""

import math

import numpy as np
import pytest
from scipy import integrate
from scipy.linalg import expm

from phonon_bs.core.errors import (
    ConfigValidationError,
    InvalidArgumentError,
    UnsupportedConfigurationError,
)
from phonon_bs.core.semiclassical import (
    PulseShape,
    SystemParams,
    balanced_kappa,
    bs_map,
    hom_g2,
    hom_g2_limit,
    hom_g2_quadrature,
    hom_visibility,
    mz_pu,
    mz_pu_quadrature,
    mz_pu_time_resolved,
    mz_visibility,
    output_amplitudes,
    propagator_coeffs,
    transmission_quadrature,
    transmission_reflection,
)


class TestSystemParams:

    @pytest.mark.parametrize("field", ["kappa1", "kappa2", "gamma"])
    def test_rates_must_be_positive(self, field):
        kwargs = dict(kappa1=1.0, kappa2=1.0, gamma=1.0, gbar=0.5)
        kwargs[field] = 0.0
        with pytest.raises(ConfigValidationError) as info:
            SystemParams(**kwargs)
        assert info.value.field == field

    def test_coupling_must_match_amplitude(self):
        with pytest.raises(ConfigValidationError):
            SystemParams(kappa1=1.0, kappa2=1.0, gamma=1.0, gbar=1.0, g=0.3, beta=2.0)

    def test_quantum_factory_derives_coupling(self):
        p = SystemParams.quantum(beta=4.0, gbar=1.0)
        assert p.g == pytest.approx(0.25)
        assert not p.is_semiclassical

    def test_zero_amplitude_needs_coupling(self):
        with pytest.raises(InvalidArgumentError):
            SystemParams.quantum(beta=0.0, gbar=1.0)

    def test_asymmetric_damping_has_no_closed_form(self):
        p = SystemParams(kappa1=1.0, kappa2=2.0, gamma=1.0, gbar=0.5)
        with pytest.raises(UnsupportedConfigurationError):
            transmission_reflection(p)

    def test_carrier_matching(self):
        with pytest.raises(ConfigValidationError):
            SystemParams(kappa1=1.0, kappa2=1.0, gamma=1.0, gbar=0.5, omega1=10.0, omega2=12.0, omega_m=1.0)

    def test_negative_delay_starts_port_one_later(self):
        first, second = SystemParams.semiclassical(0.5, tau=-2.0).pulses()
        assert first.offset == 2.0
        assert second.offset == 0.0


class TestPulseShape:

    def test_normalized(self):
        assert PulseShape(1.5, 0.7).norm() == pytest.approx(1.0, abs=1e-9)

    def test_zero_before_start(self):
        assert float(PulseShape(1.0, 2.0).amplitude(1.0)) == 0.0

    def test_rejects_bad_bandwidth(self):
        with pytest.raises(ConfigValidationError):
            PulseShape(0.0)


class TestTransmission:

    def test_workhorse_value(self, workhorse):
        T, R = transmission_reflection(workhorse)
        assert T == pytest.approx(27 / 65, rel=1e-12)
        assert T + R == pytest.approx(1.0)

    def test_decoupled_cavities_reflect(self):
        assert transmission_reflection(SystemParams.semiclassical(0.0)).T == 0.0

    def test_strong_damping_point(self):
        p = SystemParams.semiclassical(1.2, kappa=5.0)
        assert transmission_reflection(p).T == pytest.approx(0.4933, abs=5e-4)
        assert mz_visibility(p) == pytest.approx(0.9058, abs=5e-4)

    @pytest.mark.parametrize("gbar,kappa", [(1 / 3, 1.0), (1.2, 5.0)])
    def test_quadrature_agrees(self, gbar, kappa):
        p = SystemParams.semiclassical(gbar, kappa=kappa)
        assert transmission_quadrature(p) == pytest.approx(transmission_reflection(p).T, rel=1e-6)

    def test_output_port_validation(self, workhorse):
        with pytest.raises(InvalidArgumentError):
            output_amplitudes(1.0, workhorse, 3)


class TestMachZehnder:

    def test_workhorse_visibility(self, workhorse):
        assert mz_visibility(workhorse) == pytest.approx(42 / 65, rel=1e-12)

    def test_upper_detector_probability(self, workhorse):
        assert mz_pu(math.pi / 2, workhorse) == pytest.approx(0.5 - 168 / 520, rel=1e-12)
        assert mz_pu(0.0, workhorse) == pytest.approx(0.5)

    def test_probability_range(self, workhorse):
        pu = mz_pu(np.linspace(-math.pi, math.pi, 33), workhorse)
        assert np.all((pu >= 0) & (pu <= 1))


class TestHongOuMandel:

    def test_zero_delay(self, workhorse):
        assert hom_g2(0.0, workhorse) == pytest.approx(0.305562, abs=1e-5)

    def test_long_delay_limit(self, workhorse):
        assert hom_g2_limit(workhorse) == pytest.approx(2173 / 4225, rel=1e-10)
        assert hom_g2(60.0, workhorse) == pytest.approx(2173 / 4225, rel=1e-9)

    @pytest.mark.parametrize("dtau", [0.0, 60.0])
    def test_printed_form_agrees_at_the_ends(self, workhorse, dtau):
        assert hom_g2(dtau, workhorse, as_printed=True) == pytest.approx(hom_g2(dtau, workhorse), rel=1e-9)

    @pytest.mark.parametrize("dtau", [0.5, 1.7, 4.0])
    def test_symmetric_in_delay(self, workhorse, dtau):
        assert hom_g2(-dtau, workhorse) == hom_g2(dtau, workhorse)

    def test_visibility(self, workhorse):
        limit, zero = 2173 / 4225, hom_g2(0.0, workhorse)
        assert hom_visibility(workhorse) == pytest.approx((limit - zero) / (limit + zero))


class TestBalancedKappa:

    @pytest.mark.parametrize("branch,expected", [("upper", 8.80), ("lower", 1.575)])
    def test_half_transmission(self, branch, expected):
        point = balanced_kappa(2.0, branch=branch)
        assert point.kappa == pytest.approx(expected, abs=0.02)
        assert point.transmission == pytest.approx(0.5, abs=1e-9)

    def test_unreachable_target(self):
        with pytest.raises(InvalidArgumentError):
            balanced_kappa(2.0, target=1.5)

    def test_unknown_branch(self):
        with pytest.raises(InvalidArgumentError):
            balanced_kappa(2.0, branch="middle")


class TestBSMap:

    def test_grid_order_and_values(self):
        rows = bs_map([1.0, 2.0], [0.0, 1 / 3, 1.0])
        assert len(rows) == 6
        assert [r.kappa for r in rows[:3]] == [1.0, 1.0, 1.0]
        assert rows[0].T == 0.0
        assert rows[1].T == pytest.approx(27 / 65)
        assert rows[1].v_mz == pytest.approx(42 / 65)


class TestPropagator:

    @pytest.mark.parametrize("t", [0.0, 0.7, 3.0])
    def test_matches_matrix_exponential(self, t):
        p = SystemParams.semiclassical(0.4, kappa=1.3)
        A, B, C, D = propagator_coeffs(t, p)
        generator = np.array([[-0.65, -0.4j], [-0.4j, -0.65]])
        forward = np.array([[A, B], [B, A]])
        backward = np.array([[C, D], [D, C]])
        np.testing.assert_allclose(forward, expm(t * generator), atol=1e-12)
        np.testing.assert_allclose(backward @ forward, np.eye(2), atol=1e-12)

    def test_needs_symmetric_damping(self):
        with pytest.raises(UnsupportedConfigurationError):
            propagator_coeffs(1.0, SystemParams(kappa1=1.0, kappa2=2.0, gamma=1.0, gbar=0.5))


class TestQuadratureOracles:

    @pytest.mark.parametrize("phi", [math.pi / 2, -math.pi / 3, 2.0])
    def test_mz_probability(self, workhorse, phi):
        assert mz_pu_quadrature(phi, workhorse) == pytest.approx(mz_pu(phi, workhorse), rel=1e-6)

    @pytest.mark.parametrize("phi", [math.pi / 2, -1.0])
    def test_time_resolved_rate_integrates_to_probability(self, workhorse, phi):
        total, _ = integrate.quad(lambda s: float(mz_pu_time_resolved(phi, s, workhorse)), 0.0, np.inf, limit=200)
        assert total == pytest.approx(mz_pu(phi, workhorse), rel=1e-6)

    def test_time_resolved_rates_add_up(self, workhorse):
        t = np.linspace(0.0, 12.0, 25)
        both = mz_pu_time_resolved(0.4, t, workhorse) + mz_pu_time_resolved(0.4 + math.pi, t, workhorse)
        u1, _ = output_amplitudes(t, workhorse, 1)
        v1, _ = output_amplitudes(t, workhorse, 2)
        np.testing.assert_allclose(both, np.abs(u1) ** 2 + np.abs(v1) ** 2, atol=1e-14)

    @pytest.mark.parametrize("dtau", np.linspace(0.8, 8.0, 10))
    def test_hom_closed_form_between_the_ends(self, workhorse, dtau):
        assert hom_g2(dtau, workhorse) == pytest.approx(hom_g2_quadrature(dtau, workhorse), rel=1e-4)

    def test_hom_zero_delay(self, workhorse):
        assert hom_g2_quadrature(0.0, workhorse) == pytest.approx(hom_g2(0.0, workhorse), rel=1e-4)
