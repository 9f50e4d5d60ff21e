#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# closed_system.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Unitary single-frequency model of the trilinear photon-phonon beam splitter.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3

Covers the Schwinger SU(2) structure of two optical modes, the trilinear and
displaced-frame Hamiltonians, the mechanical branch states |φₘ(t)⟩ conditioned
on the optical Sz eigenvalue, their Gram matrix R_{n,m}(t) and the second-order
dephasing map of the optical state.
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np
from scipy.linalg import expm

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import ContractViolationError, InvalidArgumentError, InvalidDimensionError
from phonon_bs.core.hilbert import (
    CMatrix,
    DensityOp,
    Ket,
    ModeDims,
    annihilation,
    coherent_ket,
    dag,
    evolution_operator,
    expm_apply,
    ket_fidelity,
    ket_to_dm,
    mode_operators,
    partial_trace,
    trace_distance,
    truncation_dim,
)


Branches = Mapping[float, Ket]


# ─────────────────────────────────────────────────────────────
# 🧠 SU(2) Generators
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class SU2Generators:
    """
    Two-mode Schwinger generators on the optical space cavity-1 ⊗ cavity-2.

    ### Attributes
    - **Sx**, **Sy**, **Sz** (`CMatrix`): Cartesian generators.
    - **Sp**, **Sm** (`CMatrix`): Ladder generators S± = Sx ± iSy.
    - **d1**, **d2** (`int`): Optical truncations the matrices act on.
    """

    Sx: CMatrix
    Sy: CMatrix
    Sz: CMatrix
    Sp: CMatrix
    Sm: CMatrix
    d1: int
    d2: int

    def casimir(self) -> CMatrix:
        """S² = Sx² + Sy² + Sz²."""
        return self.Sx @ self.Sx + self.Sy @ self.Sy + self.Sz @ self.Sz


def _optical_ops(d1: int, d2: int) -> tuple[CMatrix, CMatrix]:
    a1 = np.kron(annihilation(d1), np.eye(d2, dtype=np.complex128))
    a2 = np.kron(np.eye(d1, dtype=np.complex128), annihilation(d2))
    return a1, a2


# ─────────────────────────────────────────────────────────────
# 📌 Function: su2_generators
# ─────────────────────────────────────────────────────────────
def su2_generators(N: int, d1: Optional[int] = None, d2: Optional[int] = None) -> SU2Generators:
    """
    Builds the Schwinger representation for up to `N` photons.

    ### Args
    - **N** (`int`): Photon number the optical modes must hold (≥ 1).
    - **d1**, **d2** (`Optional[int]`): Optical truncations, default `N + 1`.

    ### Returns
    - `SU2Generators`: Generators on the `d1·d2` optical space.

    ### Raises
    - `InvalidDimensionError`: If `N < 1` or a truncation cannot hold `N` photons.
    """

    if N < 1:
        raise InvalidDimensionError(f"Photon number must be >= 1, got {N}")
    d1 = N + 1 if d1 is None else d1
    d2 = N + 1 if d2 is None else d2
    if d1 < N + 1 or d2 < N + 1:
        raise InvalidDimensionError(f"Optical truncation ({d1}, {d2}) cannot hold {N} photons")

    a1, a2 = _optical_ops(d1, d2)
    Sz = 0.5 * (dag(a2) @ a2 - dag(a1) @ a1)
    Sx = 0.5 * (dag(a2) @ a1 + dag(a1) @ a2)
    Sy = -0.5j * (dag(a2) @ a1 - dag(a1) @ a2)
    return SU2Generators(Sx=Sx, Sy=Sy, Sz=Sz, Sp=Sx + 1j * Sy, Sm=Sx - 1j * Sy, d1=d1, d2=d2)


# ─────────────────────────────────────────────────────────────
# 📌 Function: schwinger_ket
# ─────────────────────────────────────────────────────────────
def schwinger_levels(s: float, m: float) -> tuple[int, int]:
    """Fock levels (n1, n2) = (s − m, s + m) of |s, m⟩_z."""
    n1, n2 = s - m, s + m
    if abs(n1 - round(n1)) > 1e-9 or abs(n2 - round(n2)) > 1e-9 or n1 < -1e-9 or n2 < -1e-9:
        raise InvalidArgumentError(f"|s={s}, m={m}⟩ is not a valid Schwinger state")
    return int(round(n1)), int(round(n2))


def schwinger_ket(s: float, m: float, d1: int, d2: int) -> Ket:
    """|s, m⟩_z = |s − m⟩₁ ⊗ |s + m⟩₂ on the optical space."""
    n1, n2 = schwinger_levels(s, m)
    if n1 >= d1 or n2 >= d2:
        raise InvalidDimensionError(f"|s={s}, m={m}⟩ outside optical truncation ({d1}, {d2})")
    ket = np.zeros(d1 * d2, dtype=np.complex128)
    ket[n1 * d2 + n2] = 1.0
    return ket


def m_values(N: int) -> list[float]:
    """Ascending Sz eigenvalues −N/2 … N/2 of the N-photon sector."""
    s = N / 2
    return [-s + k for k in range(N + 1)]


# ─────────────────────────────────────────────────────────────
# 📌 Function: Hamiltonians
# ─────────────────────────────────────────────────────────────
def trilinear_H(g: float, dims: ModeDims) -> CMatrix:
    """
    Resonant trilinear generator g(a₁†a₂b† + a₁a₂†b) with ħ = 1.

    ### Args
    - **g** (`float`): Single-phonon coupling rate.
    - **dims** (`ModeDims`): Composite truncation.

    ### Returns
    - `CMatrix`: Hermitian `D × D` matrix.
    """

    a1, a2, b = mode_operators(dims)
    term = dag(a1) @ a2 @ dag(b)
    return g * (term + dag(term))


def beam_splitter_generator(dims: ModeDims) -> CMatrix:
    """a₁†a₂ + a₁a₂† embedded in the composite space."""
    a1, a2, _ = mode_operators(dims)
    term = dag(a1) @ a2
    return term + dag(term)


def displaced_H(gbar: float, g: float, dims: ModeDims) -> CMatrix:
    """
    Trilinear generator in the frame displaced by the mechanical amplitude.

    ḡ(a₁†a₂ + a₁a₂†) + g(a₁†a₂b̄† + a₁a₂†b̄). At `g = 0` this is the bare beam splitter.
    """

    return gbar * beam_splitter_generator(dims) + trilinear_H(g, dims)


def beam_splitter_unitary(theta: float, d1: int, d2: int) -> CMatrix:
    """
    exp(−iθ(a₁†a₂ + a₁a₂†)) on the optical space.

    ### Args
    - **theta** (`float`): Beam-splitter angle θ = ḡt.
    - **d1**, **d2** (`int`): Optical truncations.
    """

    a1, a2 = _optical_ops(d1, d2)
    term = dag(a1) @ a2
    return evolution_operator(term + dag(term), theta)


# ─────────────────────────────────────────────────────────────
# 📌 Function: branch_states
# ─────────────────────────────────────────────────────────────
def photon_sector(psi0: Ket, d1: int, d2: int, tol: float = 1e-12) -> int:
    """
    Total photon number N of an optical ket.

    ### Raises
    - `InvalidArgumentError`: If the ket is zero or spans several photon sectors.
    """

    amps = np.abs(np.asarray(psi0).reshape(d1, d2))
    n_grid = np.add.outer(np.arange(d1), np.arange(d2))
    sectors = set(n_grid[amps > tol].tolist())
    if not sectors:
        raise InvalidArgumentError("Optical ket has no weight")
    if len(sectors) > 1:
        raise InvalidArgumentError(f"Optical ket spans several photon sectors {sorted(sectors)}")
    return int(sectors.pop())


def branch_states(
    psi0: Ket,
    phi0: Ket,
    g: float,
    t: float,
    dims: Optional[ModeDims] = None,
) -> dict[float, Ket]:
    """
    Mechanical branch states |φₘ(t)⟩ = ⟨s,m|U(t)|ψ₀ ⊗ φ₀⟩.

    Without explicit `dims` the optical truncation is read from the square
    optical ket and the mechanical one is padded by N levels, which is all
    the phonons an N-photon sector can create.

    ### Args
    - **psi0** (`Ket`): Optical ket inside one N-photon sector.
    - **phi0** (`Ket`): Mechanical ket.
    - **g** (`float`): Coupling rate.
    - **t** (`float`): Interaction time.
    - **dims** (`Optional[ModeDims]`): Explicit composite truncation.

    ### Returns
    - `dict[float, Ket]`: Branch per Sz eigenvalue m, in ascending m.

    ### Raises
    - `InvalidArgumentError`: If `psi0` is not a single-sector state.
    """

    psi0 = np.asarray(psi0, dtype=np.complex128)
    phi0 = np.asarray(phi0, dtype=np.complex128)
    if dims is None:
        d = int(round(np.sqrt(psi0.size)))
        if d * d != psi0.size:
            raise InvalidDimensionError(f"Optical ket of length {psi0.size} is not square; pass dims")
        N = photon_sector(psi0, d, d)
        dims = ModeDims(d, d, max(2, phi0.size + N))
    else:
        N = photon_sector(psi0, dims.d1, dims.d2)
    if phi0.size > dims.dm:
        raise InvalidDimensionError(f"Mechanical ket longer than truncation {dims.dm}")
    phi_full = np.zeros(dims.dm, dtype=np.complex128)
    phi_full[: phi0.size] = phi0

    psi_t = expm_apply(trilinear_H(g, dims), t, np.kron(psi0, phi_full)).reshape(dims.shape)
    branches: dict[float, Ket] = {}
    for m in m_values(N):
        n1, n2 = schwinger_levels(N / 2, m)
        branches[m] = psi_t[n1, n2, :].copy()
    return branches


# ─────────────────────────────────────────────────────────────
# 📌 Function: r_coefficients
# ─────────────────────────────────────────────────────────────
def r_coefficients(branches: Union[Branches, Sequence[Ket]]) -> np.ndarray:
    """
    Gram matrix R_{n,m} = ⟨φₙ|φₘ⟩ of the branch states, rows and columns in ascending m.
    """

    kets = list(branches.values()) if isinstance(branches, Mapping) else list(branches)
    stack = np.array(kets, dtype=np.complex128)
    return stack.conj() @ stack.T


def reduced_optical_state(R: np.ndarray, N: int, d1: int, d2: int) -> DensityOp:
    """Σ R_{n,m} |s,m⟩⟨s,n| on the optical space."""
    s = N / 2
    kets = [schwinger_ket(s, m, d1, d2) for m in m_values(N)]
    rho = np.zeros((d1 * d2, d1 * d2), dtype=np.complex128)
    for i, ket_m in enumerate(kets):
        for j, ket_n in enumerate(kets):
            rho += R[j, i] * np.outer(ket_m, ket_n.conj())
    return rho


# ─────────────────────────────────────────────────────────────
# 📌 Function: dressed_eigencheck
# ─────────────────────────────────────────────────────────────
def dressed_eigencheck(n: int, g: float = 1.0, tol: float = 1e-10) -> np.ndarray:
    """
    Eigenvalues of the trilinear generator on the one-photon doublet {|0,1,n−1⟩, |1,0,n⟩}.

    ### Returns
    - `np.ndarray`: Ascending eigenvalues, equal to ∓g√n.

    ### Raises
    - `InvalidArgumentError`: If `n < 1`.
    - `ContractViolationError`: If the eigenvalues miss ±g√n by more than `tol`.
    """

    if n < 1:
        raise InvalidArgumentError(f"Dressed doublet needs n >= 1 phonons, got {n}")
    dims = ModeDims(2, 2, n + 1)
    idx = [dims.index(0, 1, n - 1), dims.index(1, 0, n)]
    block = trilinear_H(g, dims)[np.ix_(idx, idx)]
    evals = np.linalg.eigvalsh(block)
    expected = np.array([-abs(g) * np.sqrt(n), abs(g) * np.sqrt(n)])
    defect = float(np.max(np.abs(evals - expected)))
    if defect > tol:
        raise ContractViolationError(f"Dressed eigenvalues {evals} miss ±g√n (defect {defect:.3e})")
    return evals


def small_beta_fidelity(beta: complex, dim: Optional[int] = None) -> float:
    """|⟨β|(|0⟩ + β|1⟩)/√(1+|β|²)⟩|² for a truncated coherent state."""
    dim = truncation_dim(beta) if dim is None else dim
    approx = np.zeros(dim, dtype=np.complex128)
    approx[0], approx[1] = 1.0, beta
    return ket_fidelity(coherent_ket(beta, dim), approx / np.linalg.norm(approx))


# ─────────────────────────────────────────────────────────────
# 📌 Function: control_curves
# ─────────────────────────────────────────────────────────────
def control_curves(gt_grid: Sequence[float], g: float = 1.0) -> dict[str, np.ndarray]:
    """
    Off-diagonal decoherence magnitudes of the qutrit |1,0⟩_z with mechanics (|0⟩ + |1⟩)/√2.

    ### Args
    - **gt_grid** (`Sequence[float]`): Dimensionless interaction times gt.
    - **g** (`float`): Coupling rate used to convert gt to t.

    ### Returns
    - `dict[str, np.ndarray]`: `gt`, `R_0_1`, `R_0_m1`, `R_1_0`, `R_m1_0` as |R| values.
    """

    psi0 = schwinger_ket(1.0, 0.0, 3, 3)
    phi0 = np.array([1.0, 1.0], dtype=np.complex128) / np.sqrt(2)
    gts = np.asarray(gt_grid, dtype=float)
    rows = {key: np.empty(gts.size) for key in ("R_0_1", "R_0_m1", "R_1_0", "R_m1_0")}
    # rows/cols of R follow m = −1, 0, +1
    for k, gt in enumerate(gts):
        R = r_coefficients(branch_states(psi0, phi0, g, gt / g))
        rows["R_0_1"][k] = abs(R[1, 2])
        rows["R_0_m1"][k] = abs(R[1, 0])
        rows["R_1_0"][k] = abs(R[2, 1])
        rows["R_m1_0"][k] = abs(R[0, 1])
    return {"gt": gts, **rows}


# ─────────────────────────────────────────────────────────────
# 📌 Function: dephasing_map_check
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class DephasingCheck:
    """
    Exact and approximate optical states after one beam-splitter pass.

    ### Attributes
    - **rho_exact** (`DensityOp`): Reduced optical state from the full unitary.
    - **rho_secondorder** (`DensityOp`): Double-commutator map in Sz.
    - **rho_perturbative** (`DensityOp`): Complete second-order expansion in gt.
    - **deviation** (`float`): Trace distance of `rho_perturbative` to `rho_exact`.
    - **printed_deviation** (`float`): Trace distance of `rho_secondorder` to `rho_exact`.
    """

    rho_exact: DensityOp
    rho_secondorder: DensityOp
    rho_perturbative: DensityOp
    deviation: float
    printed_deviation: float


def dephasing_map_check(
    rho0: DensityOp,
    theta: float,
    g: float,
    t: float,
    mech_dim: int = 8,
) -> DephasingCheck:
    """
    Compares the exact optical state with second-order maps at fixed θ.

    The mechanics starts in |β⟩ with β = θ/(gt). The evolution runs in the
    displaced frame (vacuum mechanics, H = displaced_H(θ/t, g)); the optical
    reduced state is unchanged by the frame because the displacement acts on
    the mechanics alone.

    ### Args
    - **rho0** (`DensityOp`): Optical state on a square `d × d` optical space.
    - **theta** (`float`): Beam-splitter angle.
    - **g** (`float`): Single-phonon coupling rate.
    - **t** (`float`): Interaction time (> 0).
    - **mech_dim** (`int`): Mechanical truncation in the displaced frame.

    ### Returns
    - `DephasingCheck`: States and their trace distances.

    ### Raises
    - `InvalidArgumentError`: If `t <= 0`.
    """

    if t <= 0:
        raise InvalidArgumentError(f"Interaction time must be positive, got {t}")
    rho0 = np.asarray(rho0, dtype=np.complex128)
    d = int(round(np.sqrt(rho0.shape[0])))
    if d * d != rho0.shape[0]:
        raise InvalidDimensionError(f"Optical state of size {rho0.shape[0]} is not on a square optical space")
    dims = ModeDims(d, d, mech_dim)
    vacuum = np.zeros((mech_dim, mech_dim), dtype=np.complex128)
    vacuum[0, 0] = 1.0
    P = np.kron(rho0, vacuum)
    keep = (1, 2)

    U = evolution_operator(displaced_H(theta / t, g, dims), t)
    rho_exact = partial_trace(U @ P @ dag(U), keep, dims)

    U_bs = beam_splitter_unitary(theta, d, d)
    Sz = su2_generators(d - 1, d, d).Sz
    eps = g * t
    inner = Sz @ (Sz @ rho0 - rho0 @ Sz) - (Sz @ rho0 - rho0 @ Sz) @ Sz
    rho_second = U_bs @ (rho0 - 0.5 * (theta * eps) ** 2 * inner) @ dag(U_bs)

    # U(ε) = exp(X + εE) to second order, read off the block-triangular exponential
    X = -1j * theta * beam_splitter_generator(dims)
    E = -1j * trilinear_H(1.0, dims)
    D = dims.total
    zero = np.zeros((D, D), dtype=np.complex128)
    big = expm(np.block([[X, E, zero], [zero, X, E], [zero, zero, X]]))
    U0, U1, U2 = big[:D, :D], big[:D, D : 2 * D], big[:D, 2 * D :]
    full = (
        U0 @ P @ dag(U0)
        + eps * (U1 @ P @ dag(U0) + U0 @ P @ dag(U1))
        + eps**2 * (U1 @ P @ dag(U1) + U2 @ P @ dag(U0) + U0 @ P @ dag(U2))
    )
    rho_pert = partial_trace(full, keep, dims)

    return DephasingCheck(
        rho_exact=rho_exact,
        rho_secondorder=rho_second,
        rho_perturbative=rho_pert,
        deviation=trace_distance(rho_pert, rho_exact),
        printed_deviation=trace_distance(rho_second, rho_exact),
    )


def optical_pure_state(amplitudes: Mapping[tuple[int, int], complex], d1: int, d2: int) -> DensityOp:
    """Density operator of Σ c_{n1,n2}|n1,n2⟩ on the optical space, normalized."""
    ket = np.zeros(d1 * d2, dtype=np.complex128)
    for (n1, n2), amp in amplitudes.items():
        ket[n1 * d2 + n2] = amp
    return ket_to_dm(ket / np.linalg.norm(ket))


def lab_frame_reduced_state(
    rho0: DensityOp, beta: float, g: float, t: float, dm: Optional[int] = None
) -> DensityOp:
    """Reduced optical state with the mechanics in |β⟩ and the trilinear generator, lab frame."""
    rho0 = np.asarray(rho0, dtype=np.complex128)
    d = int(round(np.sqrt(rho0.shape[0])))
    dm = truncation_dim(abs(beta) + 1.0) if dm is None else dm
    dims = ModeDims(d, d, dm)
    P = np.kron(rho0, ket_to_dm(coherent_ket(beta, dm)))
    U = evolution_operator(trilinear_H(g, dims), t)
    return partial_trace(U @ P @ dag(U), (1, 2), dims)


