#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# run_config.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Run configuration: JSON/YAML parsing, defaults and validation
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import numpy as np
import yaml

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import ConfigParseError, ConfigValidationError
from phonon_bs.core.memory_prep import MemoryPrepParams
from phonon_bs.core.semiclassical import SystemParams
import phonon_bs.options.global_vars as global_vars


GRID_KEYS: tuple[str, ...] = (
    "phi_grid", "tau_grid", "t_grid", "gt_grid", "kappa_grid", "gbar_grid",
)

MEMORY_KEYS: tuple[str, ...] = ("g", "kappa1", "kappa2", "epsilon", "alpha_s", "pulse_T", "dt")

CONFIG_KEYS: frozenset[str] = frozenset((
    "scenario", "kappa", "kappa1", "kappa2", "gamma", "gbar", "g", "beta_list",
    *GRID_KEYS,
    "n_traj", "master_seed", "dt", "t_end", "output_path", "frame", "mech_dim",
    "detection_time", "threads", "memory",
))

FRAMES: tuple[str, ...] = ("displaced", "lab")


def _default_grid(start: float, stop: float, num: int) -> list[float]:
    return [_clean(x) for x in np.linspace(start, stop, num)]


def _clean(x: float) -> float:
    """Rounds grid values to 12 significant digits so 0.1·47 reads as 4.7."""
    return float(format(float(x), ".12g"))


# ─────────────────────────────────────────────────────────────
# 🧠 MemorySection Class
# ─────────────────────────────────────────────────────────────
@dataclass
class MemorySection:
    """
    Write-pulse block of a memory-prep run.

    Defaults sit at the boundary of the memory condition: gA = π/2 and ΓT = π/20.
    """

    g: float = 0.05
    kappa1: float = 0.1
    kappa2: float = 0.01
    epsilon: float = 0.0025
    alpha_s: float = 20.0
    pulse_T: float = math.pi / 2
    dt: float = 1e-3

    def params(self) -> MemoryPrepParams:
        return MemoryPrepParams(
            g=self.g,
            kappa1=self.kappa1,
            kappa2=self.kappa2,
            epsilon=self.epsilon,
            alpha_s=self.alpha_s,
            pulse_T=self.pulse_T,
        )


# ─────────────────────────────────────────────────────────────
# 🧠 RunConfig Class
# ─────────────────────────────────────────────────────────────
@dataclass
class RunConfig:
    """
    Validated configuration of one scenario run.

    ### Attributes
    - **scenario** (`str`): One of `global_vars.SCENARIOS`.
    - **kappa1**, **kappa2**, **gamma**, **gbar** (`float`): Rates and effective coupling.
    - **g** (`Optional[float]`): Bare coupling; ḡ/|β| when omitted.
    - **beta_list** (`list[Optional[float]]`): Mechanical amplitudes; `None` is the semiclassical limit.
    - **phi_grid**, **tau_grid**, **t_grid**, **gt_grid**, **kappa_grid**, **gbar_grid** (`list[float]`): Sweep grids.
    - **n_traj** (`int`): Trajectories per Monte-Carlo point.
    - **master_seed** (`int`): Seed of the trajectory seed tree.
    - **dt** (`float`): RK4 step.
    - **t_end** (`Optional[float]`): Integration horizon override.
    - **output_path** (`Optional[str]`): Output directory.
    - **frame** (`str`): `"displaced"` or `"lab"`.
    - **mech_dim** (`Optional[int]`): Mechanical truncation override.
    - **detection_time** (`float`): Time of the HOM asymmetry and dip readouts.
    - **threads** (`Optional[int]`): Worker processes.
    - **memory** (`MemorySection`): Write-pulse parameters.
    """

    scenario: str
    kappa1: float = global_vars.DEFAULT_KAPPA
    kappa2: float = global_vars.DEFAULT_KAPPA
    gamma: float = global_vars.DEFAULT_GAMMA
    gbar: float = global_vars.DEFAULT_GBAR
    g: Optional[float] = None
    beta_list: list[Optional[float]] = field(default_factory=lambda: [None])
    phi_grid: list[float] = field(default_factory=lambda: [_clean(x) for x in global_vars.DEFAULT_PHI_GRID])
    tau_grid: list[float] = field(default_factory=lambda: _default_grid(-4.0, 4.0, 17))
    t_grid: list[float] = field(default_factory=lambda: _default_grid(0.0, 10.0, 101))
    gt_grid: list[float] = field(default_factory=lambda: _default_grid(0.0, 2 * math.pi, 201))
    kappa_grid: list[float] = field(default_factory=lambda: _default_grid(0.25, 10.0, 40))
    gbar_grid: list[float] = field(default_factory=lambda: _default_grid(0.0, 3.0, 31))
    n_traj: int = 200
    master_seed: int = global_vars.DEFAULT_MASTER_SEED
    dt: float = global_vars.DEFAULT_DT
    t_end: Optional[float] = None
    output_path: Optional[str] = None
    frame: str = "displaced"
    mech_dim: Optional[int] = None
    detection_time: float = global_vars.DEFAULT_DETECTION_TIME
    threads: Optional[int] = None
    memory: MemorySection = field(default_factory=MemorySection)

    def __post_init__(self) -> None:
        self.validate()

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: validate
# ─────────────────────────────────────────────────────────────────────────────
    def validate(self) -> None:
        """
        Checks every field.

        ### Raises
        - `ConfigValidationError`: Naming the first offending field.
        """

        if self.scenario not in global_vars.SCENARIOS:
            raise ConfigValidationError(
                "scenario", f"unknown scenario {self.scenario!r}; expected one of {', '.join(global_vars.SCENARIOS)}"
            )
        for name in ("kappa1", "kappa2", "gamma"):
            _positive(name, getattr(self, name))
        _finite(self.gbar, "gbar")
        if self.gbar < 0:
            raise ConfigValidationError("gbar", f"must be >= 0, got {self.gbar}")
        if self.g is not None:
            _finite(self.g, "g")
            if self.g < 0:
                raise ConfigValidationError("g", f"must be >= 0, got {self.g}")

        if not self.beta_list:
            raise ConfigValidationError("beta_list", "must not be empty")
        for beta in self.beta_list:
            if beta is not None and (not math.isfinite(beta) or beta < 0):
                raise ConfigValidationError("beta_list", f"entries must be null or finite and >= 0, got {beta}")

        for name in GRID_KEYS:
            grid = getattr(self, name)
            if not grid:
                raise ConfigValidationError(name, "grid must not be empty")
            for x in grid:
                _finite(x, name)
        if min(self.t_grid) < 0:
            raise ConfigValidationError("t_grid", "times must be >= 0")
        if min(self.kappa_grid) <= 0:
            raise ConfigValidationError("kappa_grid", "rates must be positive")
        if min(self.gbar_grid) < 0:
            raise ConfigValidationError("gbar_grid", "couplings must be >= 0")
        if self.scenario == "hom-dip":
            if not any(abs(x) < 1e-12 for x in self.tau_grid):
                raise ConfigValidationError("tau_grid", "hom-dip needs tau = 0 in the grid")
            if not any(x < -1e-12 for x in self.tau_grid):
                raise ConfigValidationError("tau_grid", "hom-dip needs at least one negative delay")

        if not isinstance(self.n_traj, int) or self.n_traj < 1:
            raise ConfigValidationError("n_traj", f"must be an integer >= 1, got {self.n_traj!r}")
        if not isinstance(self.master_seed, int) or self.master_seed < 0:
            raise ConfigValidationError("master_seed", f"must be a non-negative integer, got {self.master_seed!r}")
        _positive("dt", self.dt)
        if self.t_end is not None:
            _positive("t_end", self.t_end)
        if self.frame not in FRAMES:
            raise ConfigValidationError("frame", f"expected one of {FRAMES}, got {self.frame!r}")
        if self.mech_dim is not None and (not isinstance(self.mech_dim, int) or self.mech_dim < 2):
            raise ConfigValidationError("mech_dim", f"must be an integer >= 2, got {self.mech_dim!r}")
        _finite(self.detection_time, "detection_time")
        if self.detection_time < 0:
            raise ConfigValidationError("detection_time", "must be >= 0")
        if self.threads is not None and (not isinstance(self.threads, int) or self.threads < 1):
            raise ConfigValidationError("threads", f"must be an integer >= 1, got {self.threads!r}")
        _positive("memory.dt", self.memory.dt)
        try:
            self.memory.params()
        except ConfigValidationError as e:
            raise ConfigValidationError(f"memory.{e.field}", e.reason) from None

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: system_params
# ─────────────────────────────────────────────────────────────────────────────
    def system_params(self, beta: Optional[float], tau: float = 0.0) -> SystemParams:
        """
        Parameters for one mechanical amplitude of `beta_list`.

        `None` gives the semiclassical controller. At β = 0 the bare coupling
        defaults to the configured ḡ and the effective coupling g|β| is zero.
        """

        if beta is None:
            return SystemParams(
                kappa1=self.kappa1, kappa2=self.kappa2, gamma=self.gamma, gbar=self.gbar, tau=tau
            )
        if beta == 0:
            g = self.gbar if self.g is None else self.g
            gbar = 0.0
        else:
            g = self.gbar / beta if self.g is None else self.g
            gbar = self.gbar
        return SystemParams(
            kappa1=self.kappa1, kappa2=self.kappa2, gamma=self.gamma,
            gbar=gbar, g=g, beta=beta, tau=tau,
        )

    def to_record(self) -> dict[str, Any]:
        """Plain mapping of the resolved configuration for the run record."""
        return asdict(self)


def _positive(name: str, value: Any) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
        raise ConfigValidationError(name, f"must be a positive finite number, got {value!r}")


def _finite(value: Any, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigValidationError(name, f"must be a finite number, got {value!r}")


def _grid(name: str, value: Any) -> list[float]:
    """A grid is a list of numbers or a {start, stop, num} linspace."""

    if isinstance(value, Mapping):
        extra = set(value) - {"start", "stop", "num"}
        if extra or not {"start", "stop", "num"} <= set(value):
            raise ConfigValidationError(name, "linspace form needs exactly the keys start, stop, num")
        num = value["num"]
        if not isinstance(num, int) or isinstance(num, bool) or num < 1:
            raise ConfigValidationError(name, f"num must be an integer >= 1, got {num!r}")
        _finite(value["start"], name)
        _finite(value["stop"], name)
        return _default_grid(value["start"], value["stop"], num)
    if isinstance(value, list):
        for x in value:
            _finite(x, name)
        return [float(x) for x in value]
    raise ConfigValidationError(name, f"expected a list or {{start, stop, num}}, got {type(value).__name__}")


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: config_from_mapping
# ─────────────────────────────────────────────────────────────────────────────
def config_from_mapping(data: Any, default_scenario: Optional[str] = None) -> RunConfig:
    """
    Builds a RunConfig from a decoded JSON or YAML document.

    `kappa` sets both cavity rates unless `kappa1` or `kappa2` is given. A
    document without `scenario` takes `default_scenario` when one is given.

    ### Raises
    - `ConfigValidationError`: On unknown keys, missing scenario or invalid values.
    """

    if not isinstance(data, Mapping):
        raise ConfigValidationError("<root>", f"expected an object, got {type(data).__name__}")
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise ConfigValidationError(unknown[0], "unknown configuration key")
    if "scenario" not in data and default_scenario is not None:
        data = {**data, "scenario": default_scenario}
    if "scenario" not in data:
        raise ConfigValidationError("scenario", "is required")

    kwargs: dict[str, Any] = {}
    for key, value in data.items():
        if key == "kappa":
            continue
        if key in GRID_KEYS:
            kwargs[key] = _grid(key, value)
        elif key == "beta_list":
            if not isinstance(value, list):
                raise ConfigValidationError("beta_list", "expected a list")
            for b in value:
                if b is not None and (isinstance(b, bool) or not isinstance(b, (int, float))):
                    raise ConfigValidationError("beta_list", f"entries must be numbers or null, got {b!r}")
            kwargs[key] = [None if b is None else float(b) for b in value]
        elif key == "memory":
            if not isinstance(value, Mapping):
                raise ConfigValidationError("memory", "expected an object")
            extra = sorted(set(value) - set(MEMORY_KEYS))
            if extra:
                raise ConfigValidationError(f"memory.{extra[0]}", "unknown configuration key")
            for k, v in value.items():
                if k == "kappa1" and v == math.inf:
                    continue
                _finite(v, f"memory.{k}")
            kwargs[key] = MemorySection(**{k: float(v) for k, v in value.items()})
        elif key in ("kappa1", "kappa2", "gamma", "gbar", "g", "dt", "t_end", "detection_time"):
            if value is not None:
                _finite(value, key)
                value = float(value)
            kwargs[key] = value
        elif key == "scenario":
            if not isinstance(value, str):
                raise ConfigValidationError("scenario", f"expected a string, got {value!r}")
            kwargs[key] = value
        elif key == "output_path":
            if value is not None and not isinstance(value, str):
                raise ConfigValidationError("output_path", f"expected a string, got {value!r}")
            kwargs[key] = value
        else:
            kwargs[key] = value

    if "kappa" in data:
        _positive("kappa", data["kappa"])
        kwargs.setdefault("kappa1", float(data["kappa"]))
        kwargs.setdefault("kappa2", float(data["kappa"]))
    return RunConfig(**kwargs)


# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: parse_config
# ─────────────────────────────────────────────────────────────────────────────
def parse_config(text: str) -> RunConfig:
    """
    Parses a JSON configuration document.

    ### Raises
    - `ConfigParseError`: Malformed JSON, with line and column.
    - `ConfigValidationError`: Invalid values, naming the field.
    """

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigParseError(e.msg, e.lineno, e.colno) from None
    return config_from_mapping(data)


def load_config_file(path: Path, default_scenario: Optional[str] = None) -> RunConfig:
    """
    Reads a JSON (`.json`) or YAML (anything else) configuration file.

    ### Raises
    - `ConfigParseError`: Unreadable or malformed file.
    """

    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigParseError(f"cannot read {path}: {e.strerror}") from None
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigParseError(e.msg, e.lineno, e.colno) from None
        return config_from_mapping(data, default_scenario)
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line, column = (mark.line + 1, mark.column + 1) if mark else (None, None)
        raise ConfigParseError(getattr(e, "problem", None) or str(e), line, column) from None
    return config_from_mapping(data if data is not None else {}, default_scenario)


def preset_path(scenario: str) -> Path:
    return global_vars.SCENARIOS_DIR / f"preset_{scenario}.yaml"
