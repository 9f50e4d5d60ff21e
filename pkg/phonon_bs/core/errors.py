#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# errors.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Exception hierarchy shared by every PhononBS module.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
from pathlib import Path
from typing import Optional

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
# (None used directly in this file)

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
# (None used directly in this file)


# ─────────────────────────────────────────────────────────────
# 🧱 Base Error
# ─────────────────────────────────────────────────────────────
class PhononBSError(Exception):
    """
    Root of every error raised by PhononBS.

    ### Attributes
    - **exit_code** (`int`): Process exit status the CLI reports for this error.
    """

    exit_code: int = 3

    def __init__(self, message: str) -> None:
        if not message.startswith("❌"):
            message = f"❌ {message}"
        super().__init__(message)


# ─────────────────────────────────────────────────────────────
# ⚙️ Configuration Errors (exit 2)
# ─────────────────────────────────────────────────────────────
class ConfigError(PhononBSError):
    """Any problem with a run configuration."""

    exit_code = 2


class ConfigParseError(ConfigError):
    """
    Malformed configuration document.

    ### Attributes
    - **line** (`Optional[int]`): 1-based line of the syntax error.
    - **column** (`Optional[int]`): 1-based column of the syntax error.
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None) -> None:
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ConfigValidationError(ConfigError, ValueError):
    """
    Well-formed configuration holding an invalid value.

    ### Attributes
    - **field** (`str`): Name of the offending configuration key.
    - **reason** (`str`): What is wrong with the value.
    """

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        self.reason = message
        super().__init__(f"Invalid '{field}': {message}")


# ─────────────────────────────────────────────────────────────
# 🧮 Numerical Errors (exit 3)
# ─────────────────────────────────────────────────────────────
class NumericalError(PhononBSError):
    """A numerical invariant or operation contract failed."""

    exit_code = 3


class InvalidDimensionError(NumericalError, ValueError):
    """Fock truncation or operator shape is not acceptable."""


class InvalidArgumentError(NumericalError, ValueError):
    """Argument outside the domain of an operation."""


class ContractViolationError(NumericalError):
    """Input or output breaks a documented operator contract."""


class UnsupportedConfigurationError(NumericalError):
    """Closed form requested outside the parameters it was derived for."""


class TruncationError(NumericalError):
    """
    Fock truncation too small for the requested coherent amplitude.

    ### Attributes
    - **tail_mass** (`float`): Poisson weight left beyond the truncation.
    """

    def __init__(self, message: str, tail_mass: float) -> None:
        self.tail_mass = tail_mass
        super().__init__(f"{message} (tail mass {tail_mass:.3e})")


class IntegrationDivergedError(NumericalError):
    """
    Hierarchy invariant breached while integrating.

    ### Attributes
    - **time** (`float`): First checked time at which the breach was seen.
    - **defect** (`float`): Size of the breach.
    """

    def __init__(self, message: str, time: float, defect: float) -> None:
        self.time = time
        self.defect = defect
        super().__init__(f"{message} at t={time:.6g} (defect {defect:.3e})")


class GeneratorSignError(NumericalError):
    """Trace of a no-jump step increased."""


class StepSizeError(NumericalError):
    """Time step too coarse for first-order jump probabilities."""


class InvalidTransitionError(NumericalError):
    """Jump requested on a channel with zero probability."""


class RunawayTrajectoryError(NumericalError):
    """Trajectory did not register both photons inside the time horizon."""


# ─────────────────────────────────────────────────────────────
# 💾 Output Errors (exit 3)
# ─────────────────────────────────────────────────────────────
class OutputWriteError(PhononBSError):
    """
    Result file could not be written.

    ### Attributes
    - **path** (`Path`): File that failed.
    """

    def __init__(self, path: Path, reason: str) -> None:
        self.path = path
        super().__init__(f"Cannot write {path}: {reason}")
