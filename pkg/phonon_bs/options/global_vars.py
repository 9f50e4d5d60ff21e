#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# global_vars.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: PhononBS global variables
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""

import math
from pathlib import Path

# ─────────────────────────────────────────────────────────────
# MAIN DIRS VARS
# ─────────────────────────────────────────────────────────────
ROOT_DIR: Path = Path(__file__).resolve().parent.parent.parent

PACKAGE_DIR: Path = Path(__file__).resolve().parent.parent

CONFIG_DIR: Path = PACKAGE_DIR / "config"

SCENARIOS_DIR: Path = CONFIG_DIR / "scenarios"

OUTPUT_DIR: Path = ROOT_DIR / "output"

# ─────────────────────────────────────────────────────────────
# RUNTIME VARS
# ─────────────────────────────────────────────────────────────
THREADS_ENV_VAR: str = "PHONON_BS_THREADS"

SCENARIOS: tuple[str, ...] = (
    "mz-sweep",
    "hom-dip",
    "hom-mc",
    "control-curves",
    "memory-prep",
    "bs-map",
)

# ─────────────────────────────────────────────────────────────
# CSV VARS
# ─────────────────────────────────────────────────────────────
CSV_SCHEMA_VERSION: str = "v1"

CSV_SIGNIFICANT_DIGITS: int = 12

# ─────────────────────────────────────────────────────────────
# PHYSICS DEFAULTS (rates in units of kappa)
# ─────────────────────────────────────────────────────────────
DEFAULT_KAPPA: float = 1.0

DEFAULT_GAMMA: float = 1.0

DEFAULT_GBAR: float = 1.0 / 3.0

DEFAULT_DT: float = 2e-3

DEFAULT_DISPLACED_MECH_DIM: int = 8

DEFAULT_DETECTION_TIME: float = 4.7

DEFAULT_MASTER_SEED: int = 20240521

DEFAULT_PHI_GRID: tuple[float, ...] = tuple(-math.pi + k * math.pi / 16 for k in range(33))

# ─────────────────────────────────────────────────────────────
# TOLERANCES
# ─────────────────────────────────────────────────────────────
TRUNCATION_TAIL: float = 1e-10

TRUNCATION_EXTRA_LEVELS: int = 2

HERMITIAN_TOL: float = 1e-12

ADJOINT_TOL: float = 1e-8

TRACE_TOL: float = 1e-6

POSITIVITY_TOL: float = 1e-6

DIVERGENCE_FACTOR: float = 10.0

INVARIANT_CHECK_INTERVAL: float = 1.0

MAX_JUMP_PROBABILITY: float = 0.05

MEMORY_MARGIN_THRESHOLD: float = 10.0
