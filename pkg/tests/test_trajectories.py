"""Tests for two-photon quantum-jump trajectories."""

import math

import numpy as np
import pytest

from phonon_bs.core.errors import (
    GeneratorSignError,
    InvalidArgumentError,
    InvalidTransitionError,
    StepSizeError,
)
from phonon_bs.core.fock_master import integrate, prepare_hierarchy
from phonon_bs.core.hilbert import dag
from phonon_bs.core.semiclassical import SystemParams, hom_joint_probability
from phonon_bs.core.trajectories import (
    ConditionalHierarchy,
    TrajectoryRecord,
    aggregate,
    estimate_g2,
    jump_probabilities,
    jump_update,
    no_jump_step,
    run_trajectory,
    trajectory_seed,
    vacuum_probability,
)


def conditional(kind, p):
    h, coeffs = prepare_hierarchy(kind, p)
    return ConditionalHierarchy(h=h, coeffs=coeffs)


def advance(ch, t, dt, steps):
    for _ in range(steps):
        no_jump_step(ch, t, dt)
        ch.normalize()
        t += dt
    return t


class TestSeeds:

    def test_reproducible(self):
        assert trajectory_seed(20240521, 3) == trajectory_seed(20240521, 3)

    def test_distinct_per_index_and_master(self):
        seeds = {trajectory_seed(1, i) for i in range(50)} | {trajectory_seed(2, 0)}
        assert len(seeds) == 51


class TestAggregate:

    def test_fraction_and_half_width(self):
        records = [
            TrajectoryRecord(seed=1, jumps=[(0.1, "D1"), (0.4, "D2")], outcome="coincidence"),
            TrajectoryRecord(seed=2, jumps=[(0.2, "D1"), (0.3, "D1")], outcome="bunched-at-D1"),
            TrajectoryRecord(seed=3, jumps=[(0.5, "D2"), (0.9, "D2")], outcome="bunched-at-D2"),
        ]
        est = aggregate(0.0, records)
        assert est.p_hat == pytest.approx(1 / 3)
        assert est.half_width == pytest.approx(2 * math.sqrt((1 / 3) * (2 / 3) / 3))
        assert est.n_traj == 3

    def test_needs_trajectories(self, workhorse):
        with pytest.raises(InvalidArgumentError):
            estimate_g2(workhorse, 0)


class TestConditionalSteps:

    def test_no_jump_step_loses_trace(self, workhorse):
        ch = conditional("HOM", workhorse)
        assert ch.trace() == pytest.approx(1.0, abs=1e-12)
        no_jump_step(ch, 0.0, 1e-2)
        assert ch.trace() < 1.0
        assert not ch.normalized
        assert ch.h.t == pytest.approx(1e-2)

    def test_probabilities_close(self, workhorse):
        ch = conditional("HOM", workhorse)
        advance(ch, 0.0, 1e-2, 50)
        p0, p1, p2 = jump_probabilities(ch, 0.5, 1e-2)
        assert p0 + p1 + p2 == pytest.approx(1.0, abs=1e-15)
        assert p1 > 0 and p2 > 0
        assert vacuum_probability(ch, 0.5, 1e-2) == p0
        no_jump_step(ch, 0.5, 1e-2)
        assert ch.trace() == pytest.approx(p0, abs=1e-3)

    def test_coarse_step_is_refused(self, workhorse):
        ch = conditional("HOM", workhorse)
        with pytest.raises(StepSizeError):
            jump_probabilities(ch, 0.0, 0.1)

    def test_jump_renormalizes(self, workhorse):
        ch = conditional("HOM", workhorse)
        t = advance(ch, 0.0, 1e-2, 30)
        jump_update(ch, "D2", t, 1e-2)
        assert ch.trace() == pytest.approx(1.0, abs=1e-12)
        assert ch.normalized
        assert ch.jumps == [(t, "D2")]

    def test_unknown_detector(self, workhorse):
        with pytest.raises(InvalidArgumentError):
            jump_update(conditional("HOM", workhorse), "D3", 0.0, 1e-2)

    def test_uncoupled_photon_never_reaches_the_far_detector(self):
        ch = conditional("SINGLE", SystemParams.semiclassical(0.0))
        t = advance(ch, 0.0, 1e-2, 20)
        _, p1, p2 = jump_probabilities(ch, t, 1e-2)
        assert p1 > 0
        assert p2 == pytest.approx(0.0, abs=1e-14)
        with pytest.raises(InvalidTransitionError):
            jump_update(ch, "D2", t, 1e-2)

    def test_gain_in_the_generator_is_rejected(self, workhorse):
        ch = conditional("HOM", workhorse)
        ch.h.H_eff = ch.h.H_eff + 5j * np.eye(ch.h.dims.total)
        ch.h.H_eff_d = dag(ch.h.H_eff)
        with pytest.raises(GeneratorSignError):
            no_jump_step(ch, 0.0, 1e-2)

    def test_two_detections_empty_the_sector(self, workhorse):
        ch = conditional("HOM", workhorse)
        jump_update(ch, "D1", 0.0, 1e-2)
        t = advance(ch, 0.0, 1e-2, 200)
        jump_update(ch, "D1", t, 1e-2)
        t = advance(ch, t, 1e-2, 10)
        _, p1, p2 = jump_probabilities(ch, t, 1e-2)
        assert p1 == pytest.approx(0.0, abs=1e-10)
        assert p2 == pytest.approx(0.0, abs=1e-10)
        assert [d for _, d in ch.jumps] == ["D1", "D1"]


@pytest.mark.slow
class TestTrajectories:

    def test_two_detections(self, workhorse):
        record = run_trajectory(workhorse, trajectory_seed(7, 0), dt=1e-2, sample_times=[0.0, 1.0])
        assert len(record.jumps) == 2
        assert record.jumps[0][0] <= record.jumps[1][0]
        assert record.outcome in ("coincidence", "bunched-at-D1", "bunched-at-D2")
        assert record.samples.shape == (2,)
        assert record.samples[0] == pytest.approx(0.0, abs=1e-12)

    def test_same_seed_same_record(self, workhorse):
        first = run_trajectory(workhorse, 12345, dt=1e-2)
        second = run_trajectory(workhorse, 12345, dt=1e-2)
        assert first.jumps == second.jumps

    def test_independent_of_thread_count(self, workhorse):
        serial = estimate_g2(workhorse, 6, master_seed=11, dt=1e-2, threads=1)
        pooled = estimate_g2(workhorse, 6, master_seed=11, dt=1e-2, threads=2)
        assert [r.jumps for r in serial.records] == [r.jumps for r in pooled.records]
        assert serial.p_hat == pooled.p_hat

    def test_agrees_with_quadrature(self, workhorse):
        est = estimate_g2(workhorse, 500, master_seed=20240521, dt=1e-2, threads=2)
        joint, _, _ = hom_joint_probability(0.0, workhorse)
        # half_width is two standard errors
        assert abs(est.p_hat - joint) <= 1.5 * est.half_width

    def test_uncoupled_photons_always_split(self):
        est = estimate_g2(SystemParams.semiclassical(0.0), 20, master_seed=3, dt=1e-2)
        assert est.p_hat == 1.0

    def test_ensemble_mean_matches_the_master_equation(self, workhorse):
        n = 500
        est = estimate_g2(workhorse, n, master_seed=77, dt=1e-2, threads=2, sample_times=[1.0])
        conditional_n1 = np.array([r.samples[0] for r in est.records])

        h, coeffs = prepare_hierarchy("HOM", workhorse)
        integrate(h, 1.0, dt=1e-2, sample_times=[1.0])
        unconditional = coeffs.weigh(h.record.array("n1")[-1])

        sigma = conditional_n1.std(ddof=1) / math.sqrt(n)
        assert abs(conditional_n1.mean() - unconditional) <= 3 * sigma
