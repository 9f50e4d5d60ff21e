#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# fock_master.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Fock-state master-equation hierarchy for two single-photon wavepacket inputs.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3

The sixteen generalized operators ρ_{m,n;p,q}, (m,n,p,q) ∈ {0,1}⁴, are stored
in one array of shape (2, 2, 2, 2, D, D). Indices m, n belong to the photon
entering cavity 1 (envelope ξ) and p, q to the photon entering cavity 2
(envelope η). The unconditional generator is split as N + J₁ + J₂ with N the
no-jump part and Jᵢ the detector-i jump superoperator; this flux uses the
output convention a_out = √κ a + a_in.
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
from phonon_bs.core.errors import ContractViolationError, IntegrationDivergedError, InvalidArgumentError
from phonon_bs.core.hilbert import (
    CMatrix,
    DensityOp,
    Ket,
    ModeDims,
    coherent_ket,
    dag,
    fock_ket,
    ket_to_dm,
    mode_operators,
    truncation_dim,
)
from phonon_bs.core.closed_system import displaced_H, trilinear_H
from phonon_bs.core.semiclassical import PulseShape, SystemParams
from phonon_bs.utils.sysaux import SysAuxiliar
import phonon_bs.options.global_vars as global_vars


Scenario = Literal["MZ", "HOM", "SINGLE"]
Frame = Literal["displaced", "lab"]

LEVEL_SHAPE = (2, 2, 2, 2)
M_AXIS, N_AXIS, P_AXIS, Q_AXIS = 0, 1, 2, 3


# ─────────────────────────────────────────────────────────────
# 🧾 Field Coefficients
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class FieldCoeffs:
    """
    Expansion coefficients c_{m,n;p,q} of the input field state.

    ### Attributes
    - **c** (`np.ndarray`): Complex array of shape (2, 2, 2, 2).
    - **scenario** (`str`): `"MZ"`, `"HOM"` or `"SINGLE"`.
    - **phi** (`float`): Interferometer phase of the MZ input.
    """

    c: np.ndarray
    scenario: str
    phi: float = 0.0

    def __post_init__(self) -> None:
        if self.c.shape != LEVEL_SHAPE:
            raise ContractViolationError(f"Field coefficients need shape {LEVEL_SHAPE}, got {self.c.shape}")
        partner = np.conj(self.c.transpose(1, 0, 3, 2))
        if np.max(np.abs(self.c - partner)) > 1e-14:
            raise ContractViolationError("Field coefficients break c_{m,n;p,q} = (c_{n,m;q,p})*")

    @classmethod
    def mz(cls, phi: float) -> "FieldCoeffs":
        c = np.zeros(LEVEL_SHAPE, dtype=np.complex128)
        c[1, 1, 0, 0] = c[0, 0, 1, 1] = 0.5
        c[0, 1, 1, 0] = 0.5 * np.exp(-1j * phi)
        c[1, 0, 0, 1] = 0.5 * np.exp(1j * phi)
        return cls(c=c, scenario="MZ", phi=phi)

    @classmethod
    def hom(cls) -> "FieldCoeffs":
        c = np.zeros(LEVEL_SHAPE, dtype=np.complex128)
        c[1, 1, 1, 1] = 1.0
        return cls(c=c, scenario="HOM")

    @classmethod
    def single(cls) -> "FieldCoeffs":
        c = np.zeros(LEVEL_SHAPE, dtype=np.complex128)
        c[1, 1, 0, 0] = 1.0
        return cls(c=c, scenario="SINGLE")

    @classmethod
    def for_scenario(cls, scenario: Scenario, phi: float = 0.0) -> "FieldCoeffs":
        if scenario == "MZ":
            return cls.mz(phi)
        if scenario == "HOM":
            return cls.hom()
        if scenario == "SINGLE":
            return cls.single()
        raise InvalidArgumentError(f"Unknown input scenario {scenario!r}")

    def weigh(self, level_values: np.ndarray) -> np.ndarray:
        """Re Σ c*_{m,n;p,q} X_{m,n;p,q} over the four leading level axes."""
        return np.real(np.tensordot(np.conj(self.c), level_values, axes=4))


def _lower(rho: np.ndarray, *axes: int) -> np.ndarray:
    """Copy of level index 0 into index 1 along the given level axes; zero elsewhere."""
    out = np.zeros_like(rho)
    src: list[Any] = [slice(None)] * rho.ndim
    dst: list[Any] = [slice(None)] * rho.ndim
    for axis in axes:
        src[rho.ndim - 6 + axis] = 0
        dst[rho.ndim - 6 + axis] = 1
    out[tuple(dst)] = rho[tuple(src)]
    return out


def _traces(rho: np.ndarray) -> np.ndarray:
    return np.trace(rho, axis1=-2, axis2=-1)


# ─────────────────────────────────────────────────────────────
# 📈 Sample Record
# ─────────────────────────────────────────────────────────────
@dataclass
class SampleRecord:
    """
    Per-level quantities recorded at the sample times of an integration.

    Every array has the sample axis first followed by the four level axes.

    ### Attributes
    - **times** (`list[float]`): Sample times.
    - **n1**, **n2**, **nb**, **n1n2** (`list[np.ndarray]`): Tr[O ρ_{m,n;p,q}] of the number operators.
    - **flux_rate** (`list[np.ndarray]`): Tr[Jᵢ(ρ)_{m,n;p,q}] for i = 1, 2 (mode axis before the levels).
    - **flux_integral** (`list[np.ndarray]`): Time integral of `flux_rate` up to the sample.
    """

    times: list[float] = field(default_factory=list)
    n1: list[np.ndarray] = field(default_factory=list)
    n2: list[np.ndarray] = field(default_factory=list)
    nb: list[np.ndarray] = field(default_factory=list)
    n1n2: list[np.ndarray] = field(default_factory=list)
    flux_rate: list[np.ndarray] = field(default_factory=list)
    flux_integral: list[np.ndarray] = field(default_factory=list)

    def array(self, name: str) -> np.ndarray:
        return np.array(getattr(self, name))


# ─────────────────────────────────────────────────────────────
# 🧠 FockHierarchy Class
# ─────────────────────────────────────────────────────────────
class FockHierarchy:
    """
    Generalized density operators and the superoperators that drive them.

    ### Attributes
    - **t** (`float`): Current time.
    - **ops** (`np.ndarray`): ρ_{m,n;p,q} stacked as (2, 2, 2, 2, D, D).
    - **dims** (`ModeDims`): Composite truncation.
    - **pulses** (`tuple[PulseShape, PulseShape]`): Envelopes ξ and η.
    - **params** (`SystemParams`): Rates and amplitudes.
    - **coeffs** (`FieldCoeffs`): Input field coefficients used for invariant checks.
    - **H** (`CMatrix`): System Hamiltonian.
    - **flux_integral** (`np.ndarray`): ∫Tr[Jᵢ(ρ)_{m,n;p,q}]dt, shape (2, 2, 2, 2, 2).
    - **record** (`SampleRecord`): Values at the sample times.
    """

# ─────────────────────────────────────────────────────────────────────────────
# 🚧 Function: constructor
# ─────────────────────────────────────────────────────────────────────────────
    def __init__(
        self,
        ops: np.ndarray,
        dims: ModeDims,
        H: CMatrix,
        params: SystemParams,
        coeffs: FieldCoeffs,
        t: float = 0.0,
    ) -> None:
        self.ops = ops
        self.dims = dims
        self.H = H
        self.params = params
        self.coeffs = coeffs
        self.t = t
        self.pulses: tuple[PulseShape, PulseShape] = params.pulses()

        a1, a2, b = mode_operators(dims)
        self.L1: CMatrix = math.sqrt(params.kappa1) * a1
        self.L2: CMatrix = math.sqrt(params.kappa2) * a2
        self.L1d: CMatrix = dag(self.L1)
        self.L2d: CMatrix = dag(self.L2)
        self.H_eff: CMatrix = H - 0.5j * (self.L1d @ self.L1 + self.L2d @ self.L2)
        self.H_eff_d: CMatrix = dag(self.H_eff)

        n1, n2 = dag(a1) @ a1, dag(a2) @ a2
        self.observables: dict[str, CMatrix] = {"n1": n1, "n2": n2, "nb": dag(b) @ b, "n1n2": n1 @ n2}
        self.flux_integral = np.zeros((2,) + LEVEL_SHAPE, dtype=np.complex128)
        self.record = SampleRecord()

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: envelopes
# ─────────────────────────────────────────────────────────────────────────────
    def switches(self, t: float) -> tuple[bool, bool]:
        """Which pulses have started at `t`."""
        xi, eta = self.pulses
        return t >= xi.offset - 1e-12, t >= eta.offset - 1e-12

    def envelopes(self, t: float, on: tuple[bool, bool]) -> tuple[float, float]:
        xi, eta = self.pulses
        return (float(xi.raw(t)) if on[0] else 0.0, float(eta.raw(t)) if on[1] else 0.0)

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: superoperators
# ─────────────────────────────────────────────────────────────────────────────
    def no_jump(self, rho: np.ndarray, xi: complex, eta: complex) -> np.ndarray:
        """
        No-jump generator N acting level-wise on any stack ending in the level and operator axes.
        """

        out = -1j * (self.H_eff @ rho - rho @ self.H_eff_d)
        if xi:
            out -= xi * (self.L1d @ _lower(rho, M_AXIS))
            out -= np.conj(xi) * (_lower(rho, N_AXIS) @ self.L1)
            out -= abs(xi) ** 2 * _lower(rho, M_AXIS, N_AXIS)
        if eta:
            out -= eta * (self.L2d @ _lower(rho, P_AXIS))
            out -= np.conj(eta) * (_lower(rho, Q_AXIS) @ self.L2)
            out -= abs(eta) ** 2 * _lower(rho, P_AXIS, Q_AXIS)
        return out

    def jump(self, rho: np.ndarray, mode: int, xi: complex, eta: complex) -> np.ndarray:
        """
        Jump superoperator of detector `mode` (1 or 2).

        J(ρ)_{m,n} = LρL† + √(mn)|ξ|²ρ_{m−1,n−1} + √m ξ ρ_{m−1,n}L† + √n ξ* Lρ_{m,n−1}
        on the index pair and envelope of that detector.
        """

        if mode == 1:
            L, Ld, amp, first, second = self.L1, self.L1d, xi, M_AXIS, N_AXIS
        elif mode == 2:
            L, Ld, amp, first, second = self.L2, self.L2d, eta, P_AXIS, Q_AXIS
        else:
            raise InvalidArgumentError(f"Detector mode must be 1 or 2, got {mode}")
        out = L @ rho @ Ld
        if amp:
            out += abs(amp) ** 2 * _lower(rho, first, second)
            out += amp * (_lower(rho, first) @ Ld)
            out += np.conj(amp) * (L @ _lower(rho, second))
        return out

    def derivative(self, rho: np.ndarray, t: float, on: tuple[bool, bool]) -> tuple[np.ndarray, np.ndarray]:
        """Unconditional time derivative and the per-level detector fluxes."""
        xi, eta = self.envelopes(t, on)
        j1 = self.jump(rho, 1, xi, eta)
        j2 = self.jump(rho, 2, xi, eta)
        flux = np.stack([_traces(j1), _traces(j2)])
        return self.no_jump(rho, xi, eta) + j1 + j2, flux

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: sample
# ─────────────────────────────────────────────────────────────────────────────
    def sample(self) -> None:
        """Appends the current per-level observables to the record."""
        for name, op in self.observables.items():
            getattr(self.record, name).append(np.einsum("ij,...ji->...", op, self.ops))
        _, flux = self.derivative(self.ops, self.t, self.switches(self.t))
        self.record.times.append(self.t)
        self.record.flux_rate.append(flux)
        self.record.flux_integral.append(self.flux_integral.copy())

    def adjoint_defect(self) -> float:
        partner = dag(self.ops.transpose(1, 0, 3, 2, 4, 5))
        return float(np.max(np.abs(self.ops - partner)))


# ─────────────────────────────────────────────────────────────
# 📌 Function: init_hierarchy
# ─────────────────────────────────────────────────────────────
def init_hierarchy(
    scenario: Scenario,
    p: SystemParams,
    dims: ModeDims,
    mech_state: Ket,
    phi: float = 0.0,
    frame: Frame = "displaced",
) -> tuple[FockHierarchy, FieldCoeffs]:
    """
    Builds the hierarchy at t = 0 with empty cavities and loaded mechanics.

    Diagonal levels ρ_{m,m;p,p} start at |0,0⟩⟨0,0| ⊗ |mech⟩⟨mech|; levels with
    m ≠ n or p ≠ q start at zero.

    ### Args
    - **scenario** (`Scenario`): `"MZ"`, `"HOM"` or `"SINGLE"`.
    - **p** (`SystemParams`): Rates, couplings and delay.
    - **dims** (`ModeDims`): Composite truncation.
    - **mech_state** (`Ket`): Normalized mechanical ket of length `dims.dm`.
    - **phi** (`float`): MZ phase (only for `"MZ"`).
    - **frame** (`Frame`): `"displaced"` uses displaced_H(ḡ, g); `"lab"` uses trilinear_H(g).

    ### Returns
    - `tuple[FockHierarchy, FieldCoeffs]`: Hierarchy and input coefficients.

    ### Raises
    - `InvalidArgumentError`: On an unnormalized mechanical ket, a mismatched length or an unknown frame.
    """

    mech_state = np.asarray(mech_state, dtype=np.complex128)
    if mech_state.shape != (dims.dm,):
        raise InvalidArgumentError(f"Mechanical ket length {mech_state.size} differs from dm = {dims.dm}")
    if abs(np.linalg.norm(mech_state) - 1.0) > 1e-10:
        raise InvalidArgumentError(f"Mechanical ket has norm {np.linalg.norm(mech_state):.12g}")

    if frame == "displaced":
        H = displaced_H(p.gbar, p.g, dims)
    elif frame == "lab":
        H = trilinear_H(p.g, dims)
    else:
        raise InvalidArgumentError(f"Unknown frame {frame!r}")

    coeffs = FieldCoeffs.for_scenario(scenario, phi)
    empty = np.kron(fock_ket(0, dims.d1), fock_ket(0, dims.d2))
    rho0 = np.kron(ket_to_dm(empty), ket_to_dm(mech_state))
    ops = np.zeros(LEVEL_SHAPE + (dims.total, dims.total), dtype=np.complex128)
    for m in (0, 1):
        for q in (0, 1):
            ops[m, m, q, q] = rho0
    return FockHierarchy(ops, dims, H, p, coeffs), coeffs


def prepare_hierarchy(
    scenario: Scenario,
    p: SystemParams,
    frame: Frame = "displaced",
    mech_dim: Optional[int] = None,
    phi: float = 0.0,
) -> tuple[FockHierarchy, FieldCoeffs]:
    """
    Chooses truncations and the mechanical state for a scenario, then calls `init_hierarchy`.

    Optical modes hold one photon for MZ and SINGLE inputs and two for HOM.
    The displaced frame starts the mechanics in vacuum with `mech_dim` levels
    (two when the bare coupling vanishes); the lab frame loads |β⟩ with the
    truncation rule of `hilbert`.

    ### Raises
    - `InvalidArgumentError`: If the lab frame is asked for without a mechanical amplitude.
    """

    optical = 3 if scenario == "HOM" else 2
    if frame == "lab":
        if p.beta is None:
            raise InvalidArgumentError("The lab frame needs a mechanical amplitude beta")
        dm = mech_dim or truncation_dim(p.beta)
        mech = coherent_ket(p.beta, dm)
    else:
        dm = mech_dim or (2 if p.g == 0 else global_vars.DEFAULT_DISPLACED_MECH_DIM)
        mech = fock_ket(0, dm)
    return init_hierarchy(scenario, p, ModeDims(optical, optical, dm), mech, phi=phi, frame=frame)


# ─────────────────────────────────────────────────────────────
# 📌 Function: hierarchy_rhs
# ─────────────────────────────────────────────────────────────
def hierarchy_rhs(h: FockHierarchy, t: float) -> np.ndarray:
    """
    Time derivative of every ρ_{m,n;p,q} at time `t`.

    Pulses count as started from their start time on.
    """

    drho, _ = h.derivative(h.ops, t, h.switches(t))
    return drho


# ─────────────────────────────────────────────────────────────
# 📌 Function: integrate
# ─────────────────────────────────────────────────────────────
Derivative = Callable[[np.ndarray, float, tuple[bool, bool]], tuple[np.ndarray, Optional[np.ndarray]]]


def segment_edges(start: float, stop: float, marks: Sequence[float]) -> list[float]:
    inner = {float(x) for x in marks if start < x < stop}
    return sorted({start, stop} | inner)


def _march(
    h: FockHierarchy,
    y: np.ndarray,
    deriv: Derivative,
    t_end: float,
    dt: float,
    sample_times: Sequence[float],
    on_sample: Callable[[float, np.ndarray, Optional[np.ndarray]], None],
    check_times: Sequence[float] = (),
    on_edge: Optional[Callable[[float, np.ndarray], None]] = None,
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Fixed-step RK4 from `h.t` to `t_end`, never straddling a pulse start.

    Segment ends are the sample times, the check times and the pulse starts;
    each segment is cut into equal steps no longer than `dt`. The auxiliary
    output of `deriv` is integrated with the same stage weights. `on_edge`
    sees the state at every segment end that is not a sample time.
    """

    if dt <= 0:
        raise InvalidArgumentError(f"Time step must be positive, got {dt}")
    marks = list(sample_times) + list(check_times) + [pulse.offset for pulse in h.pulses]
    aux_total: Optional[np.ndarray] = None
    samples = {round(s, 12) for s in sample_times}
    if round(h.t, 12) in samples:
        on_sample(h.t, y, aux_total)

    edges = segment_edges(h.t, t_end, marks)
    for a, b in zip(edges, edges[1:]):
        steps = max(1, math.ceil((b - a) / dt - 1e-9))
        step = (b - a) / steps
        on = h.switches(a)
        for k in range(steps):
            t0 = a + k * step
            k1, g1 = deriv(y, t0, on)
            k2, g2 = deriv(y + 0.5 * step * k1, t0 + 0.5 * step, on)
            k3, g3 = deriv(y + 0.5 * step * k2, t0 + 0.5 * step, on)
            k4, g4 = deriv(y + step * k3, t0 + step, on)
            y = y + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            if g1 is not None:
                inc = (step / 6.0) * (g1 + 2 * g2 + 2 * g3 + g4)
                aux_total = inc if aux_total is None else aux_total + inc
        if round(b, 12) in samples:
            on_sample(b, y, aux_total)
        elif on_edge is not None:
            on_edge(b, y)
    return y, aux_total


def _check_invariants(h: FockHierarchy, logger: Optional[logging.Logger]) -> None:
    rho = physical_state(h, h.coeffs)
    checks = {
        "adjoint symmetry": (h.adjoint_defect(), global_vars.ADJOINT_TOL),
        "physical Hermiticity": (float(np.max(np.abs(rho - dag(rho)))), global_vars.ADJOINT_TOL),
        "physical trace": (abs(complex(np.trace(rho)) - 1.0), global_vars.TRACE_TOL),
        "physical positivity": (
            max(0.0, -float(np.linalg.eigvalsh(0.5 * (rho + dag(rho)))[0])),
            global_vars.POSITIVITY_TOL,
        ),
    }
    for name, (defect, tol) in checks.items():
        if defect > global_vars.DIVERGENCE_FACTOR * tol:
            raise IntegrationDivergedError(f"Hierarchy {name} breached", h.t, defect)
        if defect > tol and logger:
            logger.warning(f"Hierarchy {name} defect {defect:.3e} at t={h.t:.6g}")


def integrate(
    h: FockHierarchy,
    t_end: float,
    dt: float = global_vars.DEFAULT_DT,
    sample_times: Optional[Sequence[float]] = None,
    logger: Optional[logging.Logger] = None,
) -> FockHierarchy:
    """
    Advances all sixteen operators together with classical fourth-order Runge-Kutta.

    Per-level detector fluxes are integrated alongside. At every sample time
    (and at `t_end`) the per-level observables are recorded. The invariants
    are checked at every segment end, which includes the sample times, the
    pulse starts and a checkpoint every `INVARIANT_CHECK_INTERVAL`: adjoint
    symmetry within 1e−8, and a physical state Hermitian within 1e−8, of unit
    trace and positive within 1e−6.

    ### Args
    - **h** (`FockHierarchy`): Hierarchy to advance in place.
    - **t_end** (`float`): Final time.
    - **dt** (`float`): Maximal step.
    - **sample_times** (`Optional[Sequence[float]]`): Times to record, within [h.t, t_end].
    - **logger** (`Optional[logging.Logger]`): Receives per-sample invariant summaries.

    ### Returns
    - `FockHierarchy`: The same hierarchy at `t_end`.

    ### Raises
    - `IntegrationDivergedError`: If an invariant is breached by more than ten times its tolerance.
    - `InvalidArgumentError`: If a sample time lies outside [h.t, t_end].
    """

    samples = sorted(set(float(s) for s in (sample_times or [])) | {float(t_end)})
    if samples[0] < h.t - 1e-12 or samples[-1] > t_end + 1e-12:
        raise InvalidArgumentError(f"Sample times must lie in [{h.t}, {t_end}]")
    flux_start = h.flux_integral.copy()

    def on_sample(t: float, y: np.ndarray, aux: Optional[np.ndarray]) -> None:
        h.t, h.ops = t, y
        h.flux_integral = flux_start + (0 if aux is None else aux)
        h.sample()
        _check_invariants(h, logger)
        if logger:
            logger.debug(f"t={t:.6g} adjoint defect {h.adjoint_defect():.3e}")

    def on_edge(t: float, y: np.ndarray) -> None:
        h.t, h.ops = t, y
        _check_invariants(h, logger)

    checkpoints = np.arange(h.t, t_end, global_vars.INVARIANT_CHECK_INTERVAL)[1:]
    ops, aux = _march(h, h.ops, h.derivative, t_end, dt, samples, on_sample, checkpoints, on_edge)
    h.t, h.ops = t_end, ops
    h.flux_integral = flux_start + (0 if aux is None else aux)
    return h


# ─────────────────────────────────────────────────────────────
# 📌 Function: physical_state / detector_flux / coincidence_rate
# ─────────────────────────────────────────────────────────────
def physical_state(h: FockHierarchy, c: Optional[FieldCoeffs] = None) -> DensityOp:
    """ρ_system = Σ c*_{m,n;p,q} ρ_{m,n;p,q}."""
    c = h.coeffs if c is None else c
    return np.tensordot(np.conj(c.c), h.ops, axes=4)


def _at_time(h: FockHierarchy, t: Optional[float]) -> None:
    if t is not None and abs(t - h.t) > 1e-12:
        raise InvalidArgumentError(f"Hierarchy is at t={h.t}, not {t}; integrate first")


def detector_flux(h: FockHierarchy, c: FieldCoeffs, mode: int, t: Optional[float] = None) -> float:
    """
    Photon flux ⟨a_out† a_out⟩ at detector `mode` for the input state `c`.

    ### Raises
    - `InvalidArgumentError`: If `t` differs from the hierarchy time or `mode` is not 1 or 2.
    """

    _at_time(h, t)
    xi, eta = h.envelopes(h.t, h.switches(h.t))
    return float(c.weigh(_traces(h.jump(h.ops, mode, xi, eta))))


def coincidence_rate(h: FockHierarchy, t: Optional[float] = None) -> float:
    """κ₁κ₂ Tr[a₁†a₁a₂†a₂ ρ_{1,1;1,1}]."""
    _at_time(h, t)
    value = np.trace(h.observables["n1n2"] @ h.ops[1, 1, 1, 1])
    return float(h.params.kappa1 * h.params.kappa2 * np.real(value))


def default_t_end(p: SystemParams) -> float:
    return 40.0 / max(p.kappa1, p.kappa2, p.gamma) + abs(p.tau)


def _visibility(values: np.ndarray, axis: int = 0) -> np.ndarray:
    hi, lo = np.max(values, axis=axis), np.min(values, axis=axis)
    total = hi + lo
    return np.divide(hi - lo, total, out=np.zeros_like(total, dtype=float), where=total > 1e-300)


# ─────────────────────────────────────────────────────────────
# 📌 Function: mz_observables
# ─────────────────────────────────────────────────────────────
@dataclass
class MZObservables:
    """
    MZ detection statistics at detector 1 over a phase grid.

    ### Attributes
    - **phi** (`np.ndarray`): Phase grid.
    - **t** (`np.ndarray`): Sample times.
    - **pu** (`np.ndarray`): Detection rate P_u(φ, t), shape (φ, t).
    - **visibility** (`np.ndarray`): v(t) over the phase grid.
    - **pu_integrated** (`np.ndarray`): Detection probability per phase, integrated to `t_end`.
    - **v_integrated** (`float`): Visibility of `pu_integrated`.
    """

    phi: np.ndarray
    t: np.ndarray
    pu: np.ndarray
    visibility: np.ndarray
    pu_integrated: np.ndarray
    v_integrated: float


def mz_observables(
    p: SystemParams,
    phi_grid: Sequence[float],
    t_grid: Sequence[float],
    dt: float = global_vars.DEFAULT_DT,
    t_end: Optional[float] = None,
    frame: Frame = "displaced",
    mech_dim: Optional[int] = None,
    logger: Optional[logging.Logger] = None,
) -> MZObservables:
    """
    MZ interference pattern of one photon for the mechanical amplitude held in `p`.

    The field coefficients enter linearly, so one integration serves every phase.

    ### Args
    - **p** (`SystemParams`): Parameters; `p.beta` and `p.g` select the controller regime.
    - **phi_grid** (`Sequence[float]`): Phases.
    - **t_grid** (`Sequence[float]`): Times for the time-resolved rate.
    - **dt** (`float`): RK4 step.
    - **t_end** (`Optional[float]`): Integration horizon (default 40/max rate).
    - **frame** (`Frame`): Hamiltonian frame.
    - **mech_dim** (`Optional[int]`): Mechanical truncation.
    - **logger** (`Optional[logging.Logger]`): Run logger.

    ### Returns
    - `MZObservables`: Rates, integrated probabilities and visibilities.
    """

    t_end = max(default_t_end(p) if t_end is None else t_end, max(t_grid, default=0.0))
    h, _ = prepare_hierarchy("MZ", p, frame=frame, mech_dim=mech_dim)
    integrate(h, t_end, dt, sample_times=t_grid, logger=logger)

    rates = h.record.array("flux_rate")[:, 0]
    sample_times = np.array(h.record.times)
    wanted = [int(np.argmin(np.abs(sample_times - t))) for t in t_grid]
    phis = np.asarray(phi_grid, dtype=float)
    pu = np.empty((phis.size, len(wanted)))
    pu_int = np.empty(phis.size)
    for i, phi in enumerate(phis):
        c = FieldCoeffs.mz(phi)
        pu[i] = [c.weigh(rates[k]) for k in wanted]
        pu_int[i] = c.weigh(h.flux_integral[0])

    if logger:
        logger.info(f"MZ run beta={p.beta} g={p.g:.6g}: integrated visibility {float(_visibility(pu_int)):.6g}")
    return MZObservables(
        phi=phis,
        t=np.asarray(t_grid, dtype=float),
        pu=pu,
        visibility=_visibility(pu, axis=0),
        pu_integrated=pu_int,
        v_integrated=float(_visibility(pu_int)),
    )


# ─────────────────────────────────────────────────────────────
# 📌 Function: hom_dip
# ─────────────────────────────────────────────────────────────
@dataclass
class HOMDip:
    """
    Coincidence rates over delays and times.

    ### Attributes
    - **tau** (`np.ndarray`): Delay grid.
    - **t** (`np.ndarray`): Time grid.
    - **coincidence** (`np.ndarray`): C(t, τ) with shape (τ, t).
    - **visibility** (`np.ndarray`): (max_{τ<0} C − C(t,0)) / (max_{τ<0} C + C(t,0)).
    """

    tau: np.ndarray
    t: np.ndarray
    coincidence: np.ndarray
    visibility: np.ndarray


def _hom_point(job: tuple) -> np.ndarray:
    p, t_grid, dt, frame, mech_dim = job
    h, _ = prepare_hierarchy("HOM", p, frame=frame, mech_dim=mech_dim)
    integrate(h, max(t_grid), dt, sample_times=t_grid)
    times = np.array(h.record.times)
    n1n2 = h.record.array("n1n2")[:, 1, 1, 1, 1]
    wanted = [int(np.argmin(np.abs(times - t))) for t in t_grid]
    return p.kappa1 * p.kappa2 * np.real(n1n2[wanted])


def hom_dip(
    p: SystemParams,
    tau_grid: Sequence[float],
    t_grid: Sequence[float],
    dt: float = global_vars.DEFAULT_DT,
    frame: Frame = "displaced",
    mech_dim: Optional[int] = None,
    threads: int = 1,
    on_result: Optional[Callable[[int, Any], None]] = None,
    logger: Optional[logging.Logger] = None,
) -> HOMDip:
    """
    Coincidence rate C(t, τ) and the worst-case dip visibility v(t).

    Each delay is an independent hierarchy run, fanned out over `threads` processes.
    Times are measured from the arrival of the first photon.

    ### Raises
    - `InvalidArgumentError`: If the delay grid lacks τ = 0 or any τ < 0.
    """

    taus = np.asarray(tau_grid, dtype=float)
    zero = np.flatnonzero(np.abs(taus) < 1e-12)
    negative = np.flatnonzero(taus < -1e-12)
    if zero.size == 0 or negative.size == 0:
        raise InvalidArgumentError("The delay grid needs tau = 0 and at least one negative delay")
    if len(t_grid) == 0 or min(t_grid) < 0:
        raise InvalidArgumentError("The time grid must be non-empty and non-negative")

    jobs = [(p.with_tau(float(tau)), list(t_grid), dt, frame, mech_dim) for tau in taus]
    rows = SysAuxiliar.parallel_map(_hom_point, jobs, threads=threads, on_result=on_result)
    coincidence = np.array(rows)

    worst = np.max(coincidence[negative], axis=0)
    at_zero = coincidence[zero[0]]
    total = worst + at_zero
    visibility = np.divide(worst - at_zero, total, out=np.zeros_like(total), where=total > 1e-300)
    if logger:
        logger.info(f"HOM dip over {taus.size} delays: peak visibility {float(np.max(visibility)):.6g}")
    return HOMDip(tau=taus, t=np.asarray(t_grid, dtype=float), coincidence=coincidence, visibility=visibility)


# ─────────────────────────────────────────────────────────────
# 📌 Function: joint_detection_probability
# ─────────────────────────────────────────────────────────────
COUNT_SECTORS: tuple[tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


@dataclass(frozen=True)
class JointDetection:
    """
    Counting statistics of two photons after all light has left.

    ### Attributes
    - **p11** (`float`): Probability of one count at each detector.
    - **n1**, **n2** (`float`): Mean counts at detectors 1 and 2.
    - **g2** (`float`): P(1,1)/(n₁n₂).
    - **sectors** (`dict`): Probability of every (k₁, k₂) count sector.
    """

    p11: float
    n1: float
    n2: float
    g2: float
    sectors: dict


def joint_detection_probability(
    p: SystemParams,
    tau: Optional[float] = None,
    dt: float = global_vars.DEFAULT_DT,
    t_end: Optional[float] = None,
    frame: Frame = "displaced",
    mech_dim: Optional[int] = None,
    logger: Optional[logging.Logger] = None,
) -> JointDetection:
    """
    Fully quantum G²(τ) from the counting-resolved hierarchy.

    Conditional hierarchies ρ^{(k₁,k₂)} with k₁ + k₂ ≤ 2 evolve as
    dρ^{(k)}/dt = N(ρ^{(k)}) + J₁(ρ^{(k−e₁)}) + J₂(ρ^{(k−e₂)}); their traces
    at `t_end` are the count-sector probabilities. This is the ensemble
    average of the quantum-jump unraveling.

    ### Args
    - **p** (`SystemParams`): Parameters.
    - **tau** (`Optional[float]`): Delay overriding `p.tau`.
    - **dt** (`float`): RK4 step.
    - **t_end** (`Optional[float]`): Horizon (default 40/max rate + |τ|).
    - **frame** (`Frame`): Hamiltonian frame.
    - **mech_dim** (`Optional[int]`): Mechanical truncation.
    - **logger** (`Optional[logging.Logger]`): Run logger.
    """

    p = p if tau is None else p.with_tau(tau)
    t_end = default_t_end(p) if t_end is None else t_end
    h, coeffs = prepare_hierarchy("HOM", p, frame=frame, mech_dim=mech_dim)
    index = {k: i for i, k in enumerate(COUNT_SECTORS)}
    feed1 = [(i, index[(k1 - 1, k2)]) for i, (k1, k2) in enumerate(COUNT_SECTORS) if (k1 - 1, k2) in index]
    feed2 = [(i, index[(k1, k2 - 1)]) for i, (k1, k2) in enumerate(COUNT_SECTORS) if (k1, k2 - 1) in index]

    def deriv(y: np.ndarray, t: float, on: tuple[bool, bool]) -> tuple[np.ndarray, None]:
        xi, eta = h.envelopes(t, on)
        out = h.no_jump(y, xi, eta)
        j1 = h.jump(y, 1, xi, eta)
        j2 = h.jump(y, 2, xi, eta)
        for target, source in feed1:
            out[target] += j1[source]
        for target, source in feed2:
            out[target] += j2[source]
        return out, None

    y0 = np.zeros((len(COUNT_SECTORS),) + h.ops.shape, dtype=np.complex128)
    y0[index[(0, 0)]] = h.ops
    y, _ = _march(h, y0, deriv, t_end, dt, [], lambda *_: None)

    probs = {k: float(coeffs.weigh(_traces(y[i]))) for k, i in index.items()}
    n1 = probs[(1, 0)] + probs[(1, 1)] + 2 * probs[(2, 0)]
    n2 = probs[(0, 1)] + probs[(1, 1)] + 2 * probs[(0, 2)]
    g2 = probs[(1, 1)] / (n1 * n2) if n1 * n2 > 0 else float("nan")
    if logger:
        logger.info(f"Counting hierarchy tau={p.tau:.6g}: P11={probs[(1, 1)]:.6g}, n1={n1:.6g}, n2={n2:.6g}")
    return JointDetection(p11=probs[(1, 1)], n1=n1, n2=n2, g2=g2, sectors=probs)
