#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# memory_prep.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Raman-memory preparation of the coherent mechanical controller: adiabatic
cavity amplitude, write-pulse swap, the adiabatic master equation and the fidelity condition.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import (
    ConfigValidationError,
    IntegrationDivergedError,
    InvalidArgumentError,
)
from phonon_bs.core.fock_master import segment_edges
from phonon_bs.core.hilbert import (
    CMatrix,
    DensityOp,
    Ket,
    annihilation,
    coherent_ket,
    dag,
    evolution_operator,
    fock_ket,
    ket_to_dm,
    state_fidelity,
    trace_out,
    truncation_dim,
)
import phonon_bs.options.global_vars as global_vars


Profile = Callable[[float], complex]

# Trace drift tolerated by the memory master equation before it is called diverged.
MEMORY_TRACE_TOL = 1e-8


# ─────────────────────────────────────────────────────────────
# 🧠 MemoryPrepParams Class
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class MemoryPrepParams:
    """
    Write-pulse configuration of the Raman memory (square pulse by default).

    Cavity 1 carries the strong write pulse and is eliminated adiabatically;
    cavity 2 holds the coherent state loaded by the drive ε and swaps it into
    the mechanics.

    ### Attributes
    - **g** (`float`): Single-phonon coupling.
    - **kappa1** (`float`): Cavity-1 damping rate; `math.inf` switches the correlated jumps off.
    - **kappa2** (`float`): Cavity-2 damping rate (0 allowed when `initial_alpha` is given).
    - **epsilon** (`float`): Cavity-2 drive amplitude.
    - **alpha_s** (`float`): Adiabatic cavity-1 amplitude during the write pulse.
    - **pulse_T** (`float`): Write pulse duration.
    - **initial_alpha** (`Optional[complex]`): Overrides the loaded amplitude α₀.
    """

    g: float
    kappa1: float
    kappa2: float
    epsilon: float
    alpha_s: float
    pulse_T: float
    initial_alpha: Optional[complex] = None

    def __post_init__(self) -> None:
        if not self.g >= 0 or not math.isfinite(self.g):
            raise ConfigValidationError("g", f"coupling must be >= 0, got {self.g}")
        if not self.kappa1 > 0:
            raise ConfigValidationError("kappa1", f"rate must be positive, got {self.kappa1}")
        if not self.kappa2 >= 0 or not math.isfinite(self.kappa2):
            raise ConfigValidationError("kappa2", f"rate must be >= 0 and finite, got {self.kappa2}")
        if not self.pulse_T > 0 or not math.isfinite(self.pulse_T):
            raise ConfigValidationError("pulse_T", f"pulse duration must be positive, got {self.pulse_T}")
        if not math.isfinite(self.alpha_s) or not math.isfinite(self.epsilon):
            raise ConfigValidationError("alpha_s", "pulse and drive amplitudes must be finite")
        if self.initial_alpha is None and self.kappa2 == 0 and self.epsilon != 0:
            raise ConfigValidationError("initial_alpha", "a drive with kappa2 = 0 has no steady state")

    @classmethod
    def from_input(
        cls,
        E: float,
        g: float,
        kappa1: float,
        kappa2: float,
        epsilon: float,
        pulse_T: float,
        initial_alpha: Optional[complex] = None,
    ) -> "MemoryPrepParams":
        """Builds the parameters from the input flux amplitude E of the write pulse."""
        return cls(
            g=g, kappa1=kappa1, kappa2=kappa2, epsilon=epsilon,
            alpha_s=float(np.real(adiabatic_amplitude(E, kappa1))),
            pulse_T=pulse_T, initial_alpha=initial_alpha,
        )

    @property
    def pulse_area(self) -> float:
        return self.alpha_s * self.pulse_T

    @property
    def g_tilde(self) -> float:
        return self.g * self.pulse_area

    @property
    def Gamma(self) -> float:
        return 0.0 if math.isinf(self.kappa1) else 4.0 * self.g ** 2 / self.kappa1

    @property
    def alpha0(self) -> complex:
        if self.initial_alpha is not None:
            return complex(self.initial_alpha)
        if self.kappa2 == 0:
            return 0j
        return -2j * self.epsilon / self.kappa2

    @property
    def loaded_amplitude(self) -> complex:
        """Mechanical amplitude after a perfect swap, −iα₀."""
        return -1j * self.alpha0

    def alpha(self, t: float) -> complex:
        """Square write pulse: α_s on [0, T), zero elsewhere."""
        return complex(self.alpha_s) if 0.0 <= t < self.pulse_T else 0j

    def theta(self, t: float) -> float:
        """Fraction of the pulse area delivered by time t."""
        return min(1.0, max(0.0, t / self.pulse_T))


@dataclass(frozen=True)
class MemoryCondition:
    satisfied: bool
    margin: float


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: adiabatic_amplitude
# ─────────────────────────────────────────────────────────────────────────────
def adiabatic_amplitude(E: complex, kappa1: float) -> complex:
    """
    Cavity-1 amplitude slaved to the input amplitude: α = 2E/√κ₁.

    ### Raises
    - `InvalidArgumentError`: If `kappa1 <= 0`.
    """

    if not kappa1 > 0:
        raise InvalidArgumentError(f"kappa1 must be positive, got {kappa1}")
    return 2.0 * complex(E) / math.sqrt(kappa1)


def _memory_ops(d2: int, dm: int) -> tuple[CMatrix, CMatrix]:
    a2 = np.kron(annihilation(d2), np.eye(dm, dtype=np.complex128))
    b = np.kron(np.eye(d2, dtype=np.complex128), annihilation(dm))
    return a2, b


def memory_dims(alpha0: complex) -> tuple[int, int]:
    """Cavity-2 and mechanical truncations holding |α₀⟩ on either side of the swap."""
    dim = truncation_dim(abs(alpha0))
    return dim, dim


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: swap_final_state
# ─────────────────────────────────────────────────────────────────────────────
def swap_final_state(
    alpha0: complex,
    g_tilde_theta: float,
    dims: Optional[tuple[int, int]] = None,
    input_ket: Optional[Ket] = None,
) -> Ket:
    """
    Ideal write swap e^{−iθ̃(a₂†b + a₂b†)} applied to |α₀⟩₂ ⊗ |0⟩_b.

    At θ̃ = π/2 the cavity amplitude sits in the mechanics as |−iα₀⟩_b; at
    θ̃ = π it is back in the cavity with a sign flip.

    ### Args
    - **alpha0** (`complex`): Loaded cavity-2 amplitude.
    - **g_tilde_theta** (`float`): Swap angle θ̃ = gA·θ.
    - **dims** (`Optional[tuple[int, int]]`): (cavity-2, mechanics) truncation.
    - **input_ket** (`Optional[Ket]`): Cavity-2 state replacing |α₀⟩, e.g. a Fock state.

    ### Returns
    - `Ket`: State on cavity-2 ⊗ mechanics.

    ### Raises
    - `TruncationError`: If the truncation cannot hold |α₀⟩.
    """

    d2, dm = dims or memory_dims(alpha0)
    cavity = coherent_ket(alpha0, d2) if input_ket is None else np.asarray(input_ket, dtype=np.complex128)
    if cavity.shape != (d2,):
        raise InvalidArgumentError(f"Cavity ket has shape {cavity.shape}, expected ({d2},)")
    psi0 = np.kron(cavity, fock_ket(0, dm))
    a2, b = _memory_ops(d2, dm)
    G = dag(a2) @ b + a2 @ dag(b)
    return evolution_operator(G, g_tilde_theta) @ psi0


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: memory_me_evolve
# ─────────────────────────────────────────────────────────────────────────────
def memory_me_evolve(
    params: MemoryPrepParams,
    alpha_t: Optional[Profile] = None,
    t_end: Optional[float] = None,
    dt: float = global_vars.DEFAULT_DT,
    rho0: Optional[DensityOp] = None,
    dims: Optional[tuple[int, int]] = None,
    drive: bool = False,
    sample_times: Sequence[float] = (),
    on_sample: Optional[Callable[[float, DensityOp], None]] = None,
    logger: Optional[logging.Logger] = None,
) -> DensityOp:
    """
    RK4 integration of the adiabatic memory master equation on cavity-2 ⊗ mechanics.

        dρ/dt = −i[H(t), ρ] + Γ𝓛[a₂b†]ρ + κ₂𝓛[a₂]ρ,
        H(t) = g(α*(t) a₂b† + α(t) a₂†b) [+ ε(a₂ + a₂†) when `drive`]

    The drive term is rate-scaled like the coupling, so its steady state is |α₀⟩
    with α₀ = −2iε/κ₂.

    ### Args
    - **params** (`MemoryPrepParams`): Memory configuration.
    - **alpha_t** (`Optional[Profile]`): Cavity-1 amplitude profile; the square pulse by default.
    - **t_end** (`Optional[float]`): Final time; the pulse duration by default.
    - **dt** (`float`): Largest RK4 step.
    - **rho0** (`Optional[DensityOp]`): Initial state; |α₀⟩₂ ⊗ |0⟩_b by default.
    - **dims** (`Optional[tuple[int, int]]`): (cavity-2, mechanics) truncation.
    - **drive** (`bool`): Keep the ε drive on during the evolution.
    - **sample_times** (`Sequence[float]`): Times handed to `on_sample`.
    - **on_sample** (`Optional[Callable]`): Receives (t, ρ) at every sample time.
    - **logger** (`Optional[Logger]`): Run logger.

    ### Returns
    - `DensityOp`: State at `t_end`.

    ### Raises
    - `IntegrationDivergedError`: If the trace drifts by more than the tolerance.
    """

    if dt <= 0:
        raise InvalidArgumentError(f"Time step must be positive, got {dt}")
    profile = alpha_t or params.alpha
    t_end = params.pulse_T if t_end is None else float(t_end)
    if t_end < 0:
        raise InvalidArgumentError(f"t_end must be >= 0, got {t_end}")

    d2, dm = dims or memory_dims(params.alpha0)
    a2, b = _memory_ops(d2, dm)
    if rho0 is None:
        rho = ket_to_dm(np.kron(coherent_ket(params.alpha0, d2), fock_ket(0, dm)))
    else:
        rho = np.asarray(rho0, dtype=np.complex128)
        if rho.shape != (d2 * dm, d2 * dm):
            raise InvalidArgumentError(f"rho0 has shape {rho.shape}, expected {(d2 * dm, d2 * dm)}")

    jump_ops: list[tuple[float, CMatrix]] = []
    if params.Gamma > 0:
        jump_ops.append((params.Gamma, a2 @ dag(b)))
    if params.kappa2 > 0:
        jump_ops.append((params.kappa2, a2))
    # Non-Hermitian part collected once: H_eff = H − (i/2) Σ γ L†L
    damping = sum((rate * dag(L) @ L for rate, L in jump_ops), np.zeros_like(a2))
    swap_down = a2 @ dag(b)
    swap_up = dag(a2) @ b
    drive_term = params.epsilon * (a2 + dag(a2)) if drive else np.zeros_like(a2)

    def rhs(r: DensityOp, t: float) -> DensityOp:
        alpha = profile(t)
        H = params.g * (np.conj(alpha) * swap_down + alpha * swap_up) + drive_term
        H_eff = H - 0.5j * damping
        out = -1j * (H_eff @ r - r @ dag(H_eff))
        for rate, L in jump_ops:
            out = out + rate * (L @ r @ dag(L))
        return out

    samples = {round(s, 12) for s in sample_times}
    if on_sample and round(0.0, 12) in samples:
        on_sample(0.0, rho)

    # Square pulses switch off at T; no step straddles it
    edges = segment_edges(0.0, t_end, list(sample_times) + [params.pulse_T])
    for a, c in zip(edges, edges[1:]):
        steps = max(1, math.ceil((c - a) / dt - 1e-9))
        step = (c - a) / steps
        # Profile read as its left limit at the segment end
        t_last = float(np.nextafter(c, a))
        for k in range(steps):
            t0 = a + k * step
            tm = t0 + 0.5 * step
            k1 = rhs(rho, t0)
            k2 = rhs(rho + 0.5 * step * k1, tm)
            k3 = rhs(rho + 0.5 * step * k2, tm)
            k4 = rhs(rho + step * k3, min(t0 + step, t_last))
            rho = rho + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

        drift = abs(np.trace(rho).real - 1.0)
        if drift > global_vars.DIVERGENCE_FACTOR * MEMORY_TRACE_TOL:
            if logger:
                logger.error(f"Memory master equation trace drift {drift:.3e} at t={c:.6g}")
            raise IntegrationDivergedError("Memory master equation lost trace", c, drift)
        if drift > MEMORY_TRACE_TOL and logger:
            logger.warning(f"Memory master equation trace drift {drift:.3e} at t={c:.6g}")
        if on_sample and round(c, 12) in samples:
            on_sample(c, rho)

    if logger:
        logger.debug(
            f"Memory evolution to t={t_end:.6g}: Gamma={params.Gamma:.4g}, "
            f"kappa2={params.kappa2:.4g}, gA={params.g_tilde:.4g}"
        )
    return rho


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: memory_condition
# ─────────────────────────────────────────────────────────────────────────────
def memory_condition(
    params: MemoryPrepParams, threshold: float = global_vars.MEMORY_MARGIN_THRESHOLD
) -> MemoryCondition:
    """
    Checks ΓT ≪ gA, read as gA/(ΓT) ≥ `threshold`.

    ### Returns
    - `MemoryCondition`: `margin` is infinite when Γ = 0.
    """

    loss = params.Gamma * params.pulse_T
    margin = math.inf if loss == 0 else params.g_tilde / loss
    return MemoryCondition(satisfied=margin >= threshold * (1.0 - 1e-12), margin=margin)


def mechanical_state(rho: DensityOp, dims: tuple[int, int]) -> DensityOp:
    return trace_out(rho, dims, [1])


def cavity_state(rho: DensityOp, dims: tuple[int, int]) -> DensityOp:
    return trace_out(rho, dims, [0])


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: memory_fidelity_trace
# ─────────────────────────────────────────────────────────────────────────────
def memory_fidelity_trace(
    params: MemoryPrepParams,
    t_grid: Optional[Sequence[float]] = None,
    dt: float = global_vars.DEFAULT_DT,
    dims: Optional[tuple[int, int]] = None,
    logger: Optional[logging.Logger] = None,
) -> list[tuple[float, float, float]]:
    """
    Mechanical fidelity to |−iα₀⟩_b along the write pulse.

    ### Args
    - **params** (`MemoryPrepParams`): Memory configuration.
    - **t_grid** (`Optional[Sequence[float]]`): Sample times; 41 points over [0, T] by default.
    - **dt** (`float`): Largest RK4 step.
    - **dims** (`Optional[tuple[int, int]]`): (cavity-2, mechanics) truncation.
    - **logger** (`Optional[Logger]`): Run logger.

    ### Returns
    - `list[tuple[float, float, float]]`: Rows (t, fidelity, trace) in time order.
    """

    dims = dims or memory_dims(params.alpha0)
    if t_grid is None:
        t_grid = np.linspace(0.0, params.pulse_T, 41)
    t_grid = sorted(float(t) for t in t_grid)
    if not t_grid or t_grid[0] < 0:
        raise InvalidArgumentError("t_grid must be non-empty and non-negative")

    target = coherent_ket(-1j * params.alpha0, dims[1])
    rows: list[tuple[float, float, float]] = []

    def record(t: float, rho: DensityOp) -> None:
        rows.append((t, state_fidelity(mechanical_state(rho, dims), target), float(np.trace(rho).real)))

    memory_me_evolve(
        params, t_end=t_grid[-1], dt=dt, dims=dims,
        sample_times=t_grid, on_sample=record, logger=logger,
    )
    return rows


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: cavity_steady_state
# ─────────────────────────────────────────────────────────────────────────────
def cavity_steady_state(
    params: MemoryPrepParams,
    t_end: float,
    dt: float = global_vars.DEFAULT_DT,
    dims: Optional[tuple[int, int]] = None,
    logger: Optional[logging.Logger] = None,
) -> DensityOp:
    """
    Loads cavity 2 from vacuum with the ε drive and no write pulse.

    The state relaxes at rate κ₂/2 in amplitude towards |α₀⟩, α₀ = −2iε/κ₂.
    """

    if params.kappa2 == 0:
        raise InvalidArgumentError("Loading needs kappa2 > 0")
    dims = dims or memory_dims(params.alpha0)
    vacuum = ket_to_dm(np.kron(fock_ket(0, dims[0]), fock_ket(0, dims[1])))
    return memory_me_evolve(
        params, alpha_t=lambda t: 0j, t_end=t_end, dt=dt, rho0=vacuum,
        dims=dims, drive=True, logger=logger,
    )
