#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# hilbert.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Truncated Fock space algebra for the cavity-1, cavity-2 and mechanics modes.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3

Composite operators always use the tensor order cavity-1 ⊗ cavity-2 ⊗ mechanics.
All matrices are dense `complex128` arrays and ħ = 1.
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np
import numpy.typing as npt
from scipy.stats import poisson

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import (
    ContractViolationError,
    InvalidArgumentError,
    InvalidDimensionError,
    TruncationError,
)
import phonon_bs.options.global_vars as global_vars


CMatrix = npt.NDArray[np.complex128]
Ket = npt.NDArray[np.complex128]
DensityOp = npt.NDArray[np.complex128]
Mode = Literal[1, 2, "m"]

MODE_ORDER: tuple[Mode, ...] = (1, 2, "m")


# ─────────────────────────────────────────────────────────────
# 📐 Mode Dimensions
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class ModeDims:
    """
    Fock truncation of the three modes.

    ### Attributes
    - **d1** (`int`): Cavity-1 levels.
    - **d2** (`int`): Cavity-2 levels.
    - **dm** (`int`): Mechanical levels.
    """

    d1: int
    d2: int
    dm: int

    def __post_init__(self) -> None:
        for name in ("d1", "d2", "dm"):
            value = getattr(self, name)
            if int(value) != value or value < 2:
                raise InvalidDimensionError(f"ModeDims.{name} must be an integer >= 2, got {value}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.d1, self.d2, self.dm)

    @property
    def total(self) -> int:
        """Composite dimension D = d1·d2·dm."""
        return self.d1 * self.d2 * self.dm

    def of(self, mode: Mode) -> int:
        """Dimension of a single named mode."""
        return self.shape[_mode_axis(mode)]

    def index(self, n1: int, n2: int, nm: int) -> int:
        """Composite basis index of |n1, n2, nm⟩."""
        return int(np.ravel_multi_index((n1, n2, nm), self.shape))


def _mode_axis(mode: Mode) -> int:
    try:
        return MODE_ORDER.index(mode)
    except ValueError:
        raise InvalidArgumentError(f"Unknown mode {mode!r}; expected one of {MODE_ORDER}") from None


# ─────────────────────────────────────────────────────────────
# 📌 Function: annihilation
# ─────────────────────────────────────────────────────────────
def annihilation(dim: int) -> CMatrix:
    """
    Truncated bosonic lowering operator with ⟨n−1|a|n⟩ = √n.

    ### Args
    - **dim** (`int`): Number of retained Fock levels (≥ 2).

    ### Returns
    - `CMatrix`: `dim × dim` matrix.

    ### Raises
    - `InvalidDimensionError`: If `dim < 2`.
    """

    if int(dim) != dim or dim < 2:
        raise InvalidDimensionError(f"Fock dimension must be an integer >= 2, got {dim}")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)


def number_op(dim: int) -> CMatrix:
    return np.diag(np.arange(dim, dtype=float)).astype(np.complex128)


def dag(op: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(op, -1, -2))


def fock_ket(n: int, dim: int) -> Ket:
    if not 0 <= n < dim:
        raise InvalidDimensionError(f"Fock level {n} outside truncation {dim}")
    ket = np.zeros(dim, dtype=np.complex128)
    ket[n] = 1.0
    return ket


# ─────────────────────────────────────────────────────────────
# 📌 Function: embed
# ─────────────────────────────────────────────────────────────
def embed(op: CMatrix, mode: Mode, dims: ModeDims) -> CMatrix:
    """
    Kronecker embedding I⊗…⊗op⊗…⊗I in the order cavity-1 ⊗ cavity-2 ⊗ mechanics.

    ### Args
    - **op** (`CMatrix`): Square single-mode operator.
    - **mode** (`Mode`): `1`, `2` or `"m"`.
    - **dims** (`ModeDims`): Composite truncation.

    ### Returns
    - `CMatrix`: `D × D` composite operator.

    ### Raises
    - `InvalidDimensionError`: If `op` does not match the mode dimension.
    """

    axis = _mode_axis(mode)
    op = np.asarray(op, dtype=np.complex128)
    if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[0] != dims.shape[axis]:
        raise InvalidDimensionError(
            f"Operator of shape {op.shape} does not fit mode {mode!r} with dimension {dims.shape[axis]}"
        )
    factors = [np.eye(d, dtype=np.complex128) for d in dims.shape]
    factors[axis] = op
    out = factors[0]
    for factor in factors[1:]:
        out = np.kron(out, factor)
    return out


def mode_operators(dims: ModeDims) -> tuple[CMatrix, CMatrix, CMatrix]:
    """Embedded lowering operators (a1, a2, b)."""
    return (
        embed(annihilation(dims.d1), 1, dims),
        embed(annihilation(dims.d2), 2, dims),
        embed(annihilation(dims.dm), "m", dims),
    )


def product_ket(kets: Sequence[Ket]) -> Ket:
    out = np.asarray(kets[0], dtype=np.complex128)
    for ket in kets[1:]:
        out = np.kron(out, np.asarray(ket, dtype=np.complex128))
    return out


# ─────────────────────────────────────────────────────────────
# 📌 Function: truncation_dim
# ─────────────────────────────────────────────────────────────
def truncation_dim(
    beta: complex,
    tol: float = global_vars.TRUNCATION_TAIL,
    extra: int = global_vars.TRUNCATION_EXTRA_LEVELS,
) -> int:
    """
    Smallest Fock truncation that holds a coherent amplitude.

    Finds the smallest N whose Poisson tail P(n ≥ N; |β|²) is below `tol`
    and adds `extra` levels for the ladder action of the interaction.

    ### Args
    - **beta** (`complex`): Coherent amplitude.
    - **tol** (`float`): Allowed tail mass.
    - **extra** (`int`): Headroom levels.

    ### Returns
    - `int`: Truncation dimension (always ≥ 2).
    """

    mean = abs(beta) ** 2
    n = 1
    while poisson.sf(n - 1, mean) >= tol:
        n += 1
    return max(2, n + extra)


def tail_mass(beta: complex, dim: int) -> float:
    """Poisson weight P(n ≥ dim; |β|²) lost by a truncation."""
    return float(poisson.sf(dim - 1, abs(beta) ** 2))


def truncation_ok(beta: complex, dim: int) -> bool:
    return dim >= truncation_dim(beta)


# ─────────────────────────────────────────────────────────────
# 📌 Function: coherent_ket
# ─────────────────────────────────────────────────────────────
def coherent_ket(beta: complex, dim: int) -> Ket:
    """
    Truncated coherent state |β⟩ with components e^{−|β|²/2} βⁿ/√n!, renormalized.

    ### Raises
    - `TruncationError`: If `dim` fails the truncation rule for `beta`.
    """

    if not truncation_ok(beta, dim):
        raise TruncationError(
            f"Truncation {dim} too small for coherent amplitude {beta} "
            f"(need {truncation_dim(beta)})",
            tail_mass(beta, dim),
        )
    ket = np.empty(dim, dtype=np.complex128)
    ket[0] = np.exp(-abs(beta) ** 2 / 2)
    for n in range(1, dim):
        ket[n] = ket[n - 1] * beta / np.sqrt(n)
    return ket / np.linalg.norm(ket)


# ─────────────────────────────────────────────────────────────
# 📌 Function: evolution_operator
# ─────────────────────────────────────────────────────────────
def check_hermitian(H: CMatrix, tol: float = global_vars.HERMITIAN_TOL) -> None:
    """
    ### Raises
    - `ContractViolationError`: If max|H − H†| exceeds `tol` (scaled by max|H| when larger than 1).
    """

    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ContractViolationError(f"Expected a square matrix, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H))) if H.size else 1.0)
    defect = float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0
    if defect > tol * scale:
        raise ContractViolationError(f"Generator is not Hermitian (max|H-H†| = {defect:.3e})")


def evolution_operator(H: CMatrix, t: float) -> CMatrix:
    """
    e^{−iHt} through the Hermitian eigendecomposition of `H`.

    ### Raises
    - `ContractViolationError`: If `H` is not Hermitian.
    """

    check_hermitian(H)
    evals, evecs = np.linalg.eigh(H)
    return (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T


def expm_apply(H: CMatrix, t: float, psi: Ket) -> Ket:
    """
    e^{−iHt}ψ computed in the eigenbasis of `H`; the norm of ψ is preserved.

    ### Args
    - **H** (`CMatrix`): Hermitian generator.
    - **t** (`float`): Evolution time.
    - **psi** (`Ket`): Initial ket.

    ### Returns
    - `Ket`: Evolved ket.

    ### Raises
    - `ContractViolationError`: If `H` is not Hermitian.
    """

    check_hermitian(H)
    evals, evecs = np.linalg.eigh(H)
    coeffs = evecs.conj().T @ np.asarray(psi, dtype=np.complex128)
    return evecs @ (np.exp(-1j * evals * t) * coeffs)


# ─────────────────────────────────────────────────────────────
# 📌 Function: displacement
# ─────────────────────────────────────────────────────────────
def displacement(beta: complex, dim: int) -> CMatrix:
    """
    Displacement operator D(β) = exp(βb† − β*b) on a single truncated mode.

    The exponent is written as −iK with Hermitian K = i(βb† − β*b), so the
    result is unitary on the retained levels at any amplitude.

    ### Raises
    - `TruncationError`: If `dim` cannot hold |β| + 1.
    """

    if not truncation_ok(abs(beta) + 1.0, dim):
        raise TruncationError(
            f"Truncation {dim} too small to displace by {beta} (need {truncation_dim(abs(beta) + 1.0)})",
            tail_mass(abs(beta) + 1.0, dim),
        )
    b = annihilation(dim)
    K = 1j * (beta * b.conj().T - np.conj(beta) * b)
    return evolution_operator(K, 1.0)


# ─────────────────────────────────────────────────────────────
# 📌 Function: partial_trace
# ─────────────────────────────────────────────────────────────
def trace_out(rho: DensityOp, shape: Sequence[int], keep_axes: Iterable[int]) -> DensityOp:
    """
    Partial trace of an operator on a tensor space of arbitrary `shape`.

    ### Args
    - **rho** (`DensityOp`): Operator on the full space.
    - **shape** (`Sequence[int]`): Factor dimensions in tensor order.
    - **keep_axes** (`Iterable[int]`): Factors to keep, in any order.

    ### Returns
    - `DensityOp`: Reduced operator on the kept factors (in tensor order).
    """

    keep = sorted(set(keep_axes))
    n = len(shape)
    if not keep:
        raise InvalidArgumentError("partial trace needs at least one factor to keep")
    if any(axis < 0 or axis >= n for axis in keep):
        raise InvalidArgumentError(f"keep axes {keep} out of range for {n} factors")
    total = int(np.prod(shape))
    rho = np.asarray(rho)
    if rho.shape != (total, total):
        raise InvalidDimensionError(f"Operator of shape {rho.shape} does not match factors {tuple(shape)}")

    tensor = rho.reshape(tuple(shape) + tuple(shape))
    row_labels = list(range(n))
    col_labels = [axis if axis not in keep else n + axis for axis in range(n)]
    out_labels = keep + [n + axis for axis in keep]
    reduced = np.einsum(tensor, row_labels + col_labels, out_labels)
    kept_dim = int(np.prod([shape[axis] for axis in keep]))
    return reduced.reshape(kept_dim, kept_dim)


def partial_trace(rho: DensityOp, keep: Iterable[Mode], dims: ModeDims) -> DensityOp:
    """
    Reduced operator on the kept modes of the composite space.

    ### Args
    - **rho** (`DensityOp`): Composite operator.
    - **keep** (`Iterable[Mode]`): Subset of `{1, 2, "m"}`.
    - **dims** (`ModeDims`): Composite truncation.

    ### Raises
    - `InvalidArgumentError`: If `keep` is empty.
    """

    axes = [_mode_axis(mode) for mode in keep]
    return trace_out(rho, dims.shape, axes)


# ─────────────────────────────────────────────────────────────
# 📌 Function: check_density
# ─────────────────────────────────────────────────────────────
def check_density(
    rho: DensityOp,
    trace: float = 1.0,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-8,
    pos_tol: float = 1e-8,
) -> None:
    """
    Validates the density-operator invariants.

    ### Raises
    - `ContractViolationError`: On a Hermiticity, trace or positivity breach.
    """

    rho = np.asarray(rho)
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > herm_tol:
        raise ContractViolationError(f"Density operator not Hermitian (defect {herm:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - trace) > trace_tol:
        raise ContractViolationError(f"Density operator trace {tr.real:.12g} differs from {trace}")
    lowest = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if lowest < -pos_tol:
        raise ContractViolationError(f"Density operator has eigenvalue {lowest:.3e}")


# ─────────────────────────────────────────────────────────────
# 📌 Function: fidelities and distances
# ─────────────────────────────────────────────────────────────
def ket_fidelity(psi: Ket, phi: Ket) -> float:
    return float(abs(np.vdot(psi, phi)) ** 2)


def state_fidelity(rho: DensityOp, psi: Ket) -> float:
    """⟨ψ|ρ|ψ⟩ for a pure target ψ."""
    return float(np.real(np.vdot(psi, rho @ psi)))


def trace_distance(rho: DensityOp, sigma: DensityOp) -> float:
    """½‖ρ − σ‖₁ of two Hermitian operators."""
    diff = np.asarray(rho) - np.asarray(sigma)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))


def ket_to_dm(psi: Ket) -> DensityOp:
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


