#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# semiclassical.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: System parameters, pulse shapes and the closed-form beam-splitter analytics.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3

Closed forms for a coherently driven mechanical mode acting as a classical
beam splitter between two damped cavities fed with decaying-exponential
single photons. Every closed form has an independent quadrature oracle
built from the linear cavity response, using the output convention
a_out = √κ a − a_in.

The closed forms are written for an effective coupling ḡ; where the
literature writes the same polynomials in a symbol g, it means ḡ.
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Literal, NamedTuple, Optional, Sequence

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np
from scipy import integrate, optimize, special

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import (
    ConfigValidationError,
    InvalidArgumentError,
    UnsupportedConfigurationError,
)


# ─────────────────────────────────────────────────────────────
# 🧠 PulseShape Class
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class PulseShape:
    """
    Decaying-exponential single-photon envelope ξ(t) = √γ e^{−γ(t−τ₀)/2} for t ≥ τ₀.

    ### Attributes
    - **gamma** (`float`): Bandwidth γ.
    - **offset** (`float`): Start time τ₀.
    - **kind** (`str`): Envelope family; only `"decaying-exponential"`.
    """

    gamma: float
    offset: float = 0.0
    kind: Literal["decaying-exponential"] = "decaying-exponential"

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ConfigValidationError("gamma", f"pulse bandwidth must be positive, got {self.gamma}")
        if self.kind != "decaying-exponential":
            raise ConfigValidationError("kind", f"unsupported pulse shape {self.kind!r}")

    def raw(self, t):
        """Envelope without the cutoff before τ₀."""
        return math.sqrt(self.gamma) * np.exp(-0.5 * self.gamma * (np.asarray(t, dtype=float) - self.offset))

    def amplitude(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t >= self.offset, self.raw(np.maximum(t, self.offset)), 0.0)

    def norm(self) -> float:
        """∫|ξ|²dt by quadrature."""
        value, _ = integrate.quad(lambda s: float(self.amplitude(s)) ** 2, self.offset, np.inf)
        return value


# ─────────────────────────────────────────────────────────────
# 🧠 SystemParams Class
# ─────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class SystemParams:
    """
    Rates and amplitudes of one beam-splitter configuration (units of a reference rate).

    ### Attributes
    - **kappa1**, **kappa2** (`float`): Cavity damping rates.
    - **gamma** (`float`): Photon bandwidth.
    - **gbar** (`float`): Effective coupling ḡ = g|β|.
    - **g** (`float`): Single-phonon coupling (0 in the semiclassical limit).
    - **beta** (`Optional[complex]`): Mechanical amplitude, `None` when semiclassical.
    - **tau** (`float`): Delay of the port-2 photon relative to the port-1 photon.
    - **omega1**, **omega2**, **omega_m** (`Optional[float]`): Carrier metadata.
    """

    kappa1: float
    kappa2: float
    gamma: float
    gbar: float
    g: float = 0.0
    beta: Optional[complex] = None
    tau: float = 0.0
    omega1: Optional[float] = field(default=None, compare=False)
    omega2: Optional[float] = field(default=None, compare=False)
    omega_m: Optional[float] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for name in ("kappa1", "kappa2", "gamma"):
            value = getattr(self, name)
            if not value > 0 or not math.isfinite(value):
                raise ConfigValidationError(name, f"rate must be positive and finite, got {value}")
        if self.gbar < 0 or not math.isfinite(self.gbar):
            raise ConfigValidationError("gbar", f"effective coupling must be >= 0, got {self.gbar}")
        if self.g < 0 or not math.isfinite(self.g):
            raise ConfigValidationError("g", f"coupling must be >= 0, got {self.g}")
        if self.g > 0 and self.beta is not None:
            expected = self.g * abs(self.beta)
            if abs(expected - self.gbar) > 1e-9 * max(1.0, abs(self.gbar)):
                raise ConfigValidationError("gbar", f"{self.gbar} differs from g·|beta| = {expected}")
        carriers = (self.omega1, self.omega2, self.omega_m)
        if all(c is not None for c in carriers):
            target = self.omega1 + self.omega_m
            if abs(self.omega2 - target) > 1e-9 * max(1.0, abs(target)):
                raise ConfigValidationError("omega2", "carriers must satisfy omega2 = omega1 + omega_m")

    # ───────────────────────────────────────────────
    # 🏭 Factories
    # ───────────────────────────────────────────────
    @classmethod
    def semiclassical(
        cls, gbar: float, kappa: float = 1.0, gamma: float = 1.0, tau: float = 0.0
    ) -> "SystemParams":
        """Classical-controller limit: g = 0 and no mechanical amplitude."""
        return cls(kappa1=kappa, kappa2=kappa, gamma=gamma, gbar=gbar, tau=tau)

    @classmethod
    def quantum(
        cls,
        beta: complex,
        gbar: float,
        g: Optional[float] = None,
        kappa: float = 1.0,
        gamma: float = 1.0,
        tau: float = 0.0,
    ) -> "SystemParams":
        """
        Quantum controller with mechanical amplitude β and g = ḡ/|β|.

        At β = 0 the mechanics sits in vacuum and the beam-splitter term vanishes, so ḡ is 0.

        ### Raises
        - `InvalidArgumentError`: If `beta == 0` and no explicit `g` is given.
        """

        if abs(beta) == 0:
            if g is None:
                raise InvalidArgumentError("beta = 0 needs an explicit bare coupling g")
            return cls(kappa1=kappa, kappa2=kappa, gamma=gamma, gbar=0.0, g=g, beta=beta, tau=tau)
        g = gbar / abs(beta) if g is None else g
        return cls(kappa1=kappa, kappa2=kappa, gamma=gamma, gbar=gbar, g=g, beta=beta, tau=tau)

    def with_tau(self, tau: float) -> "SystemParams":
        return replace(self, tau=tau)

    @property
    def kappa(self) -> float:
        """
        Common damping rate.

        ### Raises
        - `UnsupportedConfigurationError`: If the two cavities are damped differently.
        """

        if abs(self.kappa1 - self.kappa2) > 1e-12 * max(self.kappa1, self.kappa2):
            raise UnsupportedConfigurationError(
                f"Closed forms need kappa1 == kappa2, got {self.kappa1} and {self.kappa2}"
            )
        return self.kappa1

    @property
    def is_semiclassical(self) -> bool:
        return self.beta is None or self.g == 0

    def pulses(self) -> tuple[PulseShape, PulseShape]:
        """Port-1 and port-2 envelopes; a negative delay starts the port-1 photon later."""
        if self.tau >= 0:
            return PulseShape(self.gamma, 0.0), PulseShape(self.gamma, self.tau)
        return PulseShape(self.gamma, -self.tau), PulseShape(self.gamma, 0.0)


# ─────────────────────────────────────────────────────────────
# 📌 Function: propagator_coeffs
# ─────────────────────────────────────────────────────────────
class PropagatorCoeffs(NamedTuple):
    A: complex
    B: complex
    C: complex
    D: complex


def propagator_coeffs(t: float, p: SystemParams) -> PropagatorCoeffs:
    """
    Coefficients of the two-cavity Langevin propagator at time `t`.

    ### Raises
    - `UnsupportedConfigurationError`: If κ₁ ≠ κ₂.
    """

    kappa, gb = p.kappa, p.gbar
    decay, grow = math.exp(-0.5 * kappa * t), math.exp(0.5 * kappa * t)
    c, s = math.cos(gb * t), math.sin(gb * t)
    return PropagatorCoeffs(A=decay * c, B=-1j * decay * s, C=grow * c, D=1j * grow * s)


# ─────────────────────────────────────────────────────────────
# 📌 Function: transmission / MZ closed forms
# ─────────────────────────────────────────────────────────────
class TransmissionReflection(NamedTuple):
    T: float
    R: float


def _denominator(kappa: float, gamma: float, gb: float) -> float:
    return (4 * gb**2 + kappa**2) * (4 * gb**2 + (gamma + kappa) ** 2)


def transmission_reflection(p: SystemParams) -> TransmissionReflection:
    """
    Effective transmission T and reflection R = 1 − T of one decaying-exponential photon.
    """

    kappa, gamma, gb = p.kappa, p.gamma, p.gbar
    T = 8 * kappa * gb**2 * (gamma + 2 * kappa) / _denominator(kappa, gamma, gb)
    return TransmissionReflection(T=T, R=1.0 - T)


def _mz_amplitude(p: SystemParams) -> float:
    kappa, gamma, gb = p.kappa, p.gamma, p.gbar
    return 4 * kappa * gb * (4 * gb**2 - kappa * (kappa + gamma)) / _denominator(kappa, gamma, gb)


def mz_pu(phi, p: SystemParams):
    """
    Detection probability at the upper MZ detector, ½ + S·sin φ.

    ### Args
    - **phi** (`float | np.ndarray`): Interferometer phase (radians).
    - **p** (`SystemParams`): Symmetric-damping parameters.
    """

    return 0.5 + _mz_amplitude(p) * np.sin(phi)


def mz_visibility(p: SystemParams) -> float:
    return abs(2 * _mz_amplitude(p))


# ─────────────────────────────────────────────────────────────
# 📌 Function: hom_g2
# ─────────────────────────────────────────────────────────────
class HomConstants(NamedTuple):
    A: float
    B: float
    C: float
    D: float
    E: float


def _hom_constants(p: SystemParams, dtau: float) -> HomConstants:
    k, y, g = p.kappa, p.gamma, p.gbar
    g2, k2, y2 = g * g, k * k, y * y
    F = k * (-12 * g2 - y2 + k2) * math.cos(g * dtau) + 2 * g * (4 * g2 + y2 - 3 * k2) * math.sin(g * dtau)
    A = (4 * g2 + k2) ** 2 * (16 * g2**2 + (y2 - k2) ** 2 + 8 * g2 * (y2 + k2)) ** 2
    B = (4 * g2 + (y - k) ** 2) ** 2 * (
        256 * g2**4
        + k2**2 * (y + k) ** 4
        + 8 * g2 * (y2 - 2 * k2) * (16 * g2**2 + k2 * (y + k) ** 2)
        + 16 * g2**2 * (y2**2 + 2 * y2 * k2 + 20 * y * k * k2 + 22 * k2**2)
    )
    C = -32 * g2 * k2 * (4 * g2 + y2 - k2) ** 2 * (4 * g2 + k2) ** 2
    D = -32 * g2 * y2 * k2 * F**2
    E = -64 * g2 * y * k2 * (4 * g2 + y2 - k2) * (4 * g2 + k2) * F
    return HomConstants(A=A, B=B, C=C, D=D, E=E)


def hom_g2(dtau: float, p: SystemParams, as_printed: bool = False) -> float:
    """
    Normalized joint detection probability G²(δτ) of two delayed photons.

    The common prefactor e^{−3δτ(κ+γ)/2} is folded into each term, so the
    C, D and E terms decay as e^{−γδτ}, e^{−κδτ} and e^{−(κ+γ)δτ/2}.
    `as_printed=True` keeps the C term at e^{−(3κ+2γ)δτ}, which agrees with the
    default at δτ = 0 and δτ → ∞ only.

    ### Args
    - **dtau** (`float`): Delay; negative values map to |δτ|.
    - **p** (`SystemParams`): Symmetric-damping parameters.
    - **as_printed** (`bool`): Use the literal C exponent.

    ### Returns
    - `float`: G²(δτ); 1 when the coupling vanishes at κ = γ.
    """

    d = abs(dtau)
    k, y = p.kappa, p.gamma
    cs = _hom_constants(p, d)
    if cs.A == 0:
        return 1.0
    c_decay = math.exp(-(3 * k + 2 * y) * d) if as_printed else math.exp(-y * d)
    total = cs.B + cs.C * c_decay + cs.D * math.exp(-k * d) + cs.E * math.exp(-0.5 * (k + y) * d)
    return total / cs.A


def hom_g2_limit(p: SystemParams) -> float:
    """Long-delay limit B/A of G²."""
    cs = _hom_constants(p, 0.0)
    return 1.0 if cs.A == 0 else cs.B / cs.A


def hom_visibility(p: SystemParams) -> float:
    """(G²(∞) − G²(0)) / (G²(∞) + G²(0))."""
    limit, zero = hom_g2_limit(p), hom_g2(0.0, p)
    return (limit - zero) / (limit + zero)


# ─────────────────────────────────────────────────────────────
# 📌 Function: quadrature oracle
# ─────────────────────────────────────────────────────────────
def _kernel(u, mu: complex, gamma: float):
    """(e^{−γu/2} − e^{−μu})/(μ − γ/2) for u ≥ 0, zero before."""
    u = np.maximum(np.asarray(u, dtype=float), 0.0)
    delta = mu - 0.5 * gamma
    if abs(delta) < 1e-14:
        val = u * np.exp(-0.5 * gamma * u)
    elif delta.real >= 0:
        val = np.exp(-0.5 * gamma * u) * (-special.expm1(-delta * u)) / delta
    else:
        val = np.exp(-mu * u) * special.expm1(delta * u) / delta
    return val


def output_amplitudes(t, p: SystemParams, port: int, offset: float = 0.0):
    """
    Output amplitudes at detectors 1 and 2 for one photon entering `port`.

    ### Args
    - **t** (`float | np.ndarray`): Times.
    - **p** (`SystemParams`): Symmetric-damping parameters.
    - **port** (`int`): Input port, 1 or 2.
    - **offset** (`float`): Pulse start time.

    ### Returns
    - `tuple`: (out1, out2) complex amplitudes.

    ### Raises
    - `InvalidArgumentError`: If `port` is not 1 or 2.
    """

    if port not in (1, 2):
        raise InvalidArgumentError(f"Input port must be 1 or 2, got {port}")
    kappa, gamma, gb = p.kappa, p.gamma, p.gbar
    t = np.asarray(t, dtype=float)
    u = t - offset
    k_plus = _kernel(u, 0.5 * kappa + 1j * gb, gamma)
    k_minus = _kernel(u, 0.5 * kappa - 1j * gb, gamma)
    scale = math.sqrt(kappa * gamma) * math.sqrt(kappa)
    same = scale * 0.5 * (k_plus + k_minus) - PulseShape(gamma, offset).amplitude(t)
    cross = scale * 0.5 * (k_plus - k_minus)
    same = np.where(u >= 0, same, 0.0)
    cross = np.where(u >= 0, cross, 0.0)
    return (same, cross) if port == 1 else (cross, same)


def _quad_complex(f: Callable[[float], complex], breaks: Sequence[float]) -> complex:
    points = sorted({0.0, *(b for b in breaks if b > 0)})
    edges = list(zip(points, points[1:] + [np.inf]))
    total = 0.0 + 0.0j
    for lo, hi in edges:
        re, _ = integrate.quad(lambda s: float(np.real(f(s))), lo, hi, limit=400, epsabs=1e-13, epsrel=1e-11)
        im, _ = integrate.quad(lambda s: float(np.imag(f(s))), lo, hi, limit=400, epsabs=1e-13, epsrel=1e-11)
        total += re + 1j * im
    return total


def transmission_quadrature(p: SystemParams) -> float:
    """∫|out2|² for a photon entering port 1."""
    value = _quad_complex(lambda s: abs(output_amplitudes(s, p, 1)[1]) ** 2, [0.0])
    return float(value.real)


def _mz_overlaps(p: SystemParams) -> tuple[float, complex]:
    def u1(s):
        return output_amplitudes(s, p, 1)[0]

    def v1(s):
        return output_amplitudes(s, p, 2)[0]

    norm = _quad_complex(lambda s: abs(u1(s)) ** 2 + abs(v1(s)) ** 2, [0.0]).real
    overlap = _quad_complex(lambda s: np.conj(u1(s)) * v1(s), [0.0])
    return norm, overlap


def mz_pu_quadrature(phi, p: SystemParams):
    """P_u = ½∫|u₁ − e^{iφ}v₁|² from the cavity response."""
    norm, overlap = _mz_overlaps(p)
    return 0.5 * norm - np.real(np.exp(1j * np.asarray(phi)) * overlap)


def mz_pu_time_resolved(phi: float, t, p: SystemParams):
    """Detection rate ½|u₁(t) − e^{iφ}v₁(t)|² at the upper detector."""
    u1 = output_amplitudes(t, p, 1)[0]
    v1 = output_amplitudes(t, p, 2)[0]
    return 0.5 * np.abs(u1 - np.exp(1j * phi) * v1) ** 2


def hom_joint_probability(dtau: float, p: SystemParams) -> tuple[float, float, float]:
    """
    Coincidence probability and mean counts (P, n₁, n₂) of two photons.

    The port-2 photon starts `dtau` after the port-1 photon (before it when negative).
    """

    start1, start2 = (0.0, dtau) if dtau >= 0 else (-dtau, 0.0)
    breaks = [start1, start2]

    def photon1(s):
        return output_amplitudes(s, p, 1, start1)

    def photon2(s):
        return output_amplitudes(s, p, 2, start2)

    u1_sq = _quad_complex(lambda s: abs(photon1(s)[0]) ** 2, breaks).real
    u2_sq = _quad_complex(lambda s: abs(photon1(s)[1]) ** 2, breaks).real
    v1_sq = _quad_complex(lambda s: abs(photon2(s)[0]) ** 2, breaks).real
    v2_sq = _quad_complex(lambda s: abs(photon2(s)[1]) ** 2, breaks).real
    x1 = _quad_complex(lambda s: np.conj(photon1(s)[0]) * photon2(s)[0], breaks)
    x2 = _quad_complex(lambda s: np.conj(photon2(s)[1]) * photon1(s)[1], breaks)

    joint = u1_sq * v2_sq + v1_sq * u2_sq + 2 * float(np.real(x1 * x2))
    return joint, u1_sq + v1_sq, u2_sq + v2_sq


def hom_g2_quadrature(dtau: float, p: SystemParams) -> float:
    joint, n1, n2 = hom_joint_probability(dtau, p)
    return joint / (n1 * n2)


# ─────────────────────────────────────────────────────────────
# 📌 Function: balanced_kappa
# ─────────────────────────────────────────────────────────────
class BalancedPoint(NamedTuple):
    kappa: float
    transmission: float
    v_mz: float
    v_hom: float


def balanced_kappa(
    gbar: float,
    gamma: float = 1.0,
    target: float = 0.5,
    branch: Literal["lower", "upper"] = "upper",
) -> BalancedPoint:
    """
    Damping rate κ at which the transmission equals `target`.

    The search runs in log κ: T is maximized with a bounded scalar
    minimization and the root is bracketed on the requested side.

    ### Raises
    - `InvalidArgumentError`: If `branch` is unknown or `target` exceeds the maximal T.
    """

    if branch not in ("lower", "upper"):
        raise InvalidArgumentError(f"branch must be 'lower' or 'upper', got {branch!r}")
    scale = max(gbar, gamma)
    lo, hi = math.log(1e-4 * scale), math.log(1e4 * scale)

    def transmission(x: float) -> float:
        return transmission_reflection(SystemParams.semiclassical(gbar, kappa=math.exp(x), gamma=gamma)).T

    best = optimize.minimize_scalar(lambda x: -transmission(x), bounds=(lo, hi), method="bounded")
    if -best.fun < target:
        raise InvalidArgumentError(f"Transmission {target} unreachable, maximum is {-best.fun:.6g}")
    a, b = (lo, best.x) if branch == "lower" else (best.x, hi)
    x = optimize.brentq(lambda x: transmission(x) - target, a, b, xtol=1e-14)
    p = SystemParams.semiclassical(gbar, kappa=math.exp(x), gamma=gamma)
    return BalancedPoint(kappa=p.kappa, transmission=transmission(x), v_mz=mz_visibility(p), v_hom=hom_visibility(p))


# ─────────────────────────────────────────────────────────────
# 📌 Function: bs_map
# ─────────────────────────────────────────────────────────────
class BSMapRow(NamedTuple):
    kappa: float
    gbar: float
    T: float
    v_mz: float
    v_hom: float


def bs_map(kappa_grid: Sequence[float], gbar_grid: Sequence[float], gamma: float = 1.0) -> list[BSMapRow]:
    """Transmission and both visibilities over the κ–ḡ plane, κ outermost."""
    rows = []
    for kappa in kappa_grid:
        for gbar in gbar_grid:
            p = SystemParams.semiclassical(gbar, kappa=kappa, gamma=gamma)
            rows.append(
                BSMapRow(
                    kappa=float(kappa),
                    gbar=float(gbar),
                    T=transmission_reflection(p).T,
                    v_mz=mz_visibility(p),
                    v_hom=hom_visibility(p),
                )
            )
    return rows
