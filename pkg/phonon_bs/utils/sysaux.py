#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# sysaux.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: System auxiliar utilities: CPU discovery, thread resolution and process fan-out.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import os
import multiprocessing
from typing import Any, Callable, Iterable, Optional

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
import psutil
from rich.console import Console

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import ConfigValidationError
import phonon_bs.options.global_vars as global_vars

# ─────────────────────────────────────────────────────────────
# 🧠 System Auxiliar Class
# ─────────────────────────────────────────────────────────────
class SysAuxiliar:
    """
        Provides system-level utilities for PhononBS: how many CPUs the process
        may use and an ordered process-pool map for sweeps and trajectories.

        ### Attributes
        - **console** (`Console`): Rich Console instance used for output rendering.
    """

# ─────────────────────────────────────────────────────────────────────────────
# 🚧 Function: constructor
# ─────────────────────────────────────────────────────────────────────────────
    def __init__(self, console: Optional[Console] = None) -> None:
        """
        Initializes the system utility class with optional console output.

        ### Args
        - **console** (`Optional[Console]`): Rich Console instance for output.
        If not provided, a default Console is created.
        """

        self.console: Console = console or Console()

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: available_threads
# ─────────────────────────────────────────────────────────────────────────────
    @staticmethod
    def available_threads() -> int:
        """
        Number of CPUs this process is allowed to run on.

        Uses the CPU affinity mask where the platform exposes it and the
        logical CPU count otherwise.

        ### Returns
        - `int`: At least 1.
        """

        try:
            return max(1, len(psutil.Process().cpu_affinity()))
        except (AttributeError, psutil.Error, OSError):
            return max(1, psutil.cpu_count(logical=True) or 1)

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: resolve_threads
# ─────────────────────────────────────────────────────────────────────────────
    def resolve_threads(self, flag: Optional[int] = None, config_value: Optional[int] = None) -> int:
        """
        Worker count by precedence: CLI flag, environment, config, available CPUs.

        ### Args
        - **flag** (`Optional[int]`): Value of `--threads`.
        - **config_value** (`Optional[int]`): Value of the config key `threads`.

        ### Returns
        - `int`: Number of worker processes (≥ 1).

        ### Raises
        - `ConfigValidationError`: If the chosen value is not a positive integer.
        """

        env_value = os.environ.get(global_vars.THREADS_ENV_VAR)
        for source, value in (
            ("--threads", flag),
            (global_vars.THREADS_ENV_VAR, env_value),
            ("threads", config_value),
        ):
            if value is None or value == "":
                continue
            try:
                threads = int(value)
            except (TypeError, ValueError):
                raise ConfigValidationError(source, f"expected a positive integer, got {value!r}") from None
            if threads < 1:
                raise ConfigValidationError(source, f"expected a positive integer, got {threads}")
            return threads
        return self.available_threads()

# ─────────────────────────────────────────────────────────────────────────────
# 📌 Function: parallel_map
# ─────────────────────────────────────────────────────────────────────────────
    @staticmethod
    def parallel_map(
        func: Callable[[Any], Any],
        jobs: Iterable[Any],
        threads: int = 1,
        on_result: Optional[Callable[[int, Any], None]] = None,
    ) -> list[Any]:
        """
        Applies `func` to every job and returns the results in job order.

        Jobs run in a `multiprocessing.Pool` through the ordered `imap`, so the
        output does not depend on scheduling. With one thread, or a single job,
        everything runs inline in the calling process.

        ### Args
        - **func** (`Callable`): Module-level (picklable) function of one job.
        - **jobs** (`Iterable`): Job descriptions.
        - **threads** (`int`): Worker processes.
        - **on_result** (`Optional[Callable[[int, Any], None]]`): Called with (index, result) as results arrive.

        ### Returns
        - `list`: One result per job, indexed by job position.
        """

        jobs = list(jobs)
        results: list[Any] = []
        workers = max(1, min(int(threads), len(jobs)))

        if workers == 1:
            for index, job in enumerate(jobs):
                result = func(job)
                results.append(result)
                if on_result: on_result(index, result)
            return results

        with multiprocessing.Pool(processes=workers) as pool:
            for index, result in enumerate(pool.imap(func, jobs)):
                results.append(result)
                if on_result: on_result(index, result)
        return results
