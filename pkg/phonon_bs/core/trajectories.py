#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# trajectories.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Two-jump Monte-Carlo unraveling of the Fock-state hierarchy and the G² estimator.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Literal, Optional, Sequence

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import (
    GeneratorSignError,
    InvalidArgumentError,
    InvalidTransitionError,
    RunawayTrajectoryError,
    StepSizeError,
)
from phonon_bs.core.fock_master import (
    FieldCoeffs,
    FockHierarchy,
    Frame,
    prepare_hierarchy,
    segment_edges,
)
from phonon_bs.core.semiclassical import SystemParams
from phonon_bs.utils.sysaux import SysAuxiliar
import phonon_bs.options.global_vars as global_vars


Detector = Literal["D1", "D2"]
Outcome = Literal["coincidence", "bunched-at-D1", "bunched-at-D2"]

DETECTOR_MODE = {"D1": 1, "D2": 2}


# ─────────────────────────────────────────────────────────────
# 🧠 ConditionalHierarchy Class
# ─────────────────────────────────────────────────────────────
@dataclass
class ConditionalHierarchy:
    """
    Hierarchy conditioned on the detection record so far.

    ### Attributes
    - **h** (`FockHierarchy`): Generalized operators and superoperators.
    - **coeffs** (`FieldCoeffs`): Input field state.
    - **jumps** (`list[tuple[float, str]]`): Detections as (time, detector).
    - **normalized** (`bool`): Whether the physical trace is currently 1.
    """

    h: FockHierarchy
    coeffs: FieldCoeffs
    jumps: list[tuple[float, str]] = field(default_factory=list)
    normalized: bool = True

    def trace(self) -> float:
        return float(self.coeffs.weigh(np.trace(self.h.ops, axis1=-2, axis2=-1)))

    def normalize(self) -> None:
        self.h.ops = self.h.ops / self.trace()
        self.normalized = True

    def expectation(self, name: str) -> float:
        """Re Σ c* Tr[O ρ] of a recorded observable (`n1`, `n2`, `nb`, `n1n2`)."""
        op = self.h.observables[name]
        return float(self.coeffs.weigh(np.einsum("ij,...ji->...", op, self.h.ops)))


# ─────────────────────────────────────────────────────────────
# 📌 Function: no_jump_step
# ─────────────────────────────────────────────────────────────
def no_jump_step(ch: ConditionalHierarchy, t: float, dt: float) -> ConditionalHierarchy:
    """
    Advances the conditional hierarchy by `dt` under the no-jump generator alone.

    The result is left un-normalized. A pulse start inside the step splits it
    so that RK4 never straddles the switch-on.

    ### Raises
    - `GeneratorSignError`: If the physical trace grows by more than 1e−10.
    """

    h = ch.h
    before = ch.trace()
    ops = h.ops
    edges = segment_edges(t, t + dt, [pulse.offset for pulse in h.pulses])
    for a, b in zip(edges, edges[1:]):
        on = h.switches(a)
        step = b - a

        def f(y: np.ndarray, s: float) -> np.ndarray:
            xi, eta = h.envelopes(s, on)
            return h.no_jump(y, xi, eta)

        k1 = f(ops, a)
        k2 = f(ops + 0.5 * step * k1, a + 0.5 * step)
        k3 = f(ops + 0.5 * step * k2, a + 0.5 * step)
        k4 = f(ops + step * k3, b)
        ops = ops + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

    h.ops, h.t = ops, t + dt
    after = ch.trace()
    if after > before + 1e-10:
        raise GeneratorSignError(f"No-jump trace grew from {before:.15g} to {after:.15g} at t={t:.6g}")
    ch.normalized = False
    return ch


# ─────────────────────────────────────────────────────────────
# 📌 Function: jump probabilities
# ─────────────────────────────────────────────────────────────
def jump_probabilities(ch: ConditionalHierarchy, t: float, dt: float) -> tuple[float, float, float]:
    """
    First-order probabilities (P⁰, P¹ᴰ¹, P¹ᴰ²) for the step [t, t + dt].

    P¹ᴰⁱ = dt·Re Σ c* Tr[Jᵢ(ρ)] and P⁰ = 1 − P¹ᴰ¹ − P¹ᴰ², so the three close exactly.

    ### Raises
    - `StepSizeError`: If a jump probability reaches 0.05 or P⁰ leaves [0, 1].
    """

    h = ch.h
    xi, eta = h.envelopes(t, h.switches(t))
    p1 = dt * float(ch.coeffs.weigh(np.trace(h.jump(h.ops, 1, xi, eta), axis1=-2, axis2=-1)))
    p2 = dt * float(ch.coeffs.weigh(np.trace(h.jump(h.ops, 2, xi, eta), axis1=-2, axis2=-1)))
    worst = max(p1, p2)
    if worst >= global_vars.MAX_JUMP_PROBABILITY:
        raise StepSizeError(f"Jump probability {worst:.4f} per step at t={t:.6g}; reduce dt below {dt}")
    p0 = 1.0 - p1 - p2
    if not -1e-9 <= p0 <= 1.0 + 1e-9:
        raise StepSizeError(f"No-jump probability {p0:.12g} outside [0, 1] at t={t:.6g}")
    return p0, p1, p2


def vacuum_probability(ch: ConditionalHierarchy, t: float, dt: float) -> float:
    """Probability of no detection at either detector during [t, t + dt]."""
    return jump_probabilities(ch, t, dt)[0]


# ─────────────────────────────────────────────────────────────
# 📌 Function: jump_update
# ─────────────────────────────────────────────────────────────
def jump_update(ch: ConditionalHierarchy, detector: Detector, t: float, dt: float) -> ConditionalHierarchy:
    """
    Applies a detection at `detector` and renormalizes by its probability.

    ### Args
    - **ch** (`ConditionalHierarchy`): Normalized conditional hierarchy at `t`.
    - **detector** (`Detector`): `"D1"` or `"D2"`.
    - **t** (`float`): Detection time.
    - **dt** (`float`): Step the probability refers to.

    ### Raises
    - `InvalidTransitionError`: If the detector has zero probability of clicking.
    """

    if detector not in DETECTOR_MODE:
        raise InvalidArgumentError(f"Unknown detector {detector!r}")
    h = ch.h
    xi, eta = h.envelopes(t, h.switches(t))
    jumped = h.jump(h.ops, DETECTOR_MODE[detector], xi, eta)
    rate = float(ch.coeffs.weigh(np.trace(jumped, axis1=-2, axis2=-1)))
    if not rate * dt > 1e-14:
        raise InvalidTransitionError(f"Detection at {detector} has probability {rate * dt:.3e} at t={t:.6g}")
    h.ops = jumped / rate
    ch.jumps.append((t, detector))
    ch.normalized = True
    return ch


# ─────────────────────────────────────────────────────────────
# 📌 Function: run_trajectory
# ─────────────────────────────────────────────────────────────
@dataclass
class TrajectoryRecord:
    """
    Detection record of one two-photon trajectory.

    ### Attributes
    - **seed** (`int`): 64-bit generator seed.
    - **jumps** (`list[tuple[float, str]]`): (time, detector) of both detections.
    - **outcome** (`str`): `"coincidence"`, `"bunched-at-D1"` or `"bunched-at-D2"`.
    - **samples** (`Optional[np.ndarray]`): Conditional ⟨a₁†a₁⟩ at the requested sample times.
    """

    seed: int
    jumps: list[tuple[float, str]]
    outcome: str
    samples: Optional[np.ndarray] = None


def trajectory_seed(master_seed: int, index: int) -> int:
    """Seed of trajectory `index`: first 64-bit word of SeedSequence(master_seed, spawn_key=(index,))."""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(sequence.generate_state(1, np.uint64)[0])


def _outcome(jumps: Sequence[tuple[float, str]]) -> Outcome:
    detectors = sorted(d for _, d in jumps)
    if detectors == ["D1", "D2"]:
        return "coincidence"
    return "bunched-at-D1" if detectors[0] == "D1" else "bunched-at-D2"


def run_trajectory(
    p: SystemParams,
    seed: int,
    dt: float = global_vars.DEFAULT_DT,
    frame: Frame = "displaced",
    mech_dim: Optional[int] = None,
    sample_times: Optional[Sequence[float]] = None,
) -> TrajectoryRecord:
    """
    Runs one trajectory until both photons are detected.

    Both photons are injected into empty cavities with the mechanics of `p`.
    Each step draws a uniform number and compares it with P⁰; on a jump a second
    draw picks D1 with probability P¹ᴰ¹/(1 − P⁰). The record depends only on
    the parameters and `seed`.

    ### Args
    - **p** (`SystemParams`): Parameters including β and τ.
    - **seed** (`int`): Generator seed.
    - **dt** (`float`): Time step.
    - **frame** (`Frame`): Hamiltonian frame.
    - **mech_dim** (`Optional[int]`): Mechanical truncation.
    - **sample_times** (`Optional[Sequence[float]]`): Times at which to record ⟨a₁†a₁⟩.

    ### Returns
    - `TrajectoryRecord`: Both detections and the outcome.

    ### Raises
    - `RunawayTrajectoryError`: If two detections have not happened by 60/min κ + |τ|.
    """

    rng = np.random.default_rng(seed)
    h, coeffs = prepare_hierarchy("HOM", p, frame=frame, mech_dim=mech_dim)
    ch = ConditionalHierarchy(h=h, coeffs=coeffs)
    t_max = 60.0 / min(p.kappa1, p.kappa2) + abs(p.tau)

    wanted = sorted(float(s) for s in (sample_times or []))
    samples = np.zeros(len(wanted))
    next_sample = 0
    while next_sample < len(wanted) and wanted[next_sample] <= 1e-12:
        samples[next_sample] = ch.expectation("n1")
        next_sample += 1

    t, step = 0.0, 0
    while len(ch.jumps) < 2:
        if t > t_max:
            raise RunawayTrajectoryError(f"Only {len(ch.jumps)} detections by t={t_max:.6g} (seed {seed})")
        p0, p1, _ = jump_probabilities(ch, t, dt)
        if rng.random() >= p0:
            detector: Detector = "D1" if rng.random() < p1 / (1.0 - p0) else "D2"
            jump_update(ch, detector, t, dt)
        no_jump_step(ch, t, dt)
        ch.normalize()
        step += 1
        t = step * dt
        while next_sample < len(wanted) and wanted[next_sample] <= t + 1e-9:
            samples[next_sample] = ch.expectation("n1") if len(ch.jumps) < 2 else 0.0
            next_sample += 1

    return TrajectoryRecord(
        seed=seed,
        jumps=list(ch.jumps),
        outcome=_outcome(ch.jumps),
        samples=samples if wanted else None,
    )


# ─────────────────────────────────────────────────────────────
# 📌 Function: estimate_g2
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class G2Estimate:
    """
    Coincidence fraction with its two-standard-deviation Bernoulli half-width.

    ### Attributes
    - **tau** (`float`): Delay.
    - **n_traj** (`int`): Number of trajectories.
    - **p_hat** (`float`): Fraction of coincidences.
    - **half_width** (`float`): 2√(p̂(1 − p̂)/n).
    - **records** (`tuple`): Per-trajectory records in index order.
    """

    tau: float
    n_traj: int
    p_hat: float
    half_width: float
    records: tuple = ()


def aggregate(tau: float, records: Sequence[TrajectoryRecord]) -> G2Estimate:
    n = len(records)
    hits = sum(1 for r in records if r.outcome == "coincidence")
    p_hat = hits / n
    return G2Estimate(
        tau=tau,
        n_traj=n,
        p_hat=p_hat,
        half_width=2.0 * math.sqrt(p_hat * (1.0 - p_hat) / n),
        records=tuple(records),
    )


def _trajectory_job(job: tuple) -> TrajectoryRecord:
    p, seed, dt, frame, mech_dim, sample_times = job
    return run_trajectory(p, seed, dt=dt, frame=frame, mech_dim=mech_dim, sample_times=sample_times)


def estimate_g2(
    p: SystemParams,
    n_traj: int,
    master_seed: int = global_vars.DEFAULT_MASTER_SEED,
    dt: float = global_vars.DEFAULT_DT,
    frame: Frame = "displaced",
    mech_dim: Optional[int] = None,
    threads: int = 1,
    sample_times: Optional[Sequence[float]] = None,
    on_result: Optional[Callable[[int, Any], None]] = None,
    logger: Optional[logging.Logger] = None,
) -> G2Estimate:
    """
    Monte-Carlo G²(τ) at the delay held in `p`.

    Trajectory i uses `trajectory_seed(master_seed, i)`, so the estimate is the
    same for any thread count.

    ### Raises
    - `InvalidArgumentError`: If `n_traj < 1`.
    """

    if n_traj < 1:
        raise InvalidArgumentError(f"n_traj must be >= 1, got {n_traj}")
    jobs = [
        (p, trajectory_seed(master_seed, i), dt, frame, mech_dim, list(sample_times or []))
        for i in range(n_traj)
    ]
    records = SysAuxiliar.parallel_map(_trajectory_job, jobs, threads=threads, on_result=on_result)
    estimate = aggregate(p.tau, records)
    if logger:
        logger.info(
            f"G2 estimate tau={p.tau:.6g}: {estimate.p_hat:.6g} ± {estimate.half_width:.3g} "
            f"over {n_traj} trajectories"
        )
    return estimate
