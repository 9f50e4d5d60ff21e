#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# cli.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: PhononBS batch command line: `phonon-bs <scenario> [--config] [--seed] [--out] [--threads] [--quiet]`
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import argparse
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
from rich.console import Console

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
from phonon_bs.core.errors import ConfigValidationError, PhononBSError
from phonon_bs.core.exp_orchestra import ExpOrchestra
from phonon_bs.core.run_config import RunConfig, load_config_file, preset_path
from phonon_bs.utils import ViewTools
import phonon_bs.options.global_vars as global_vars


# ─────────────────────────────────────────────────────────────
# 🖥️ CLI App Class
# ─────────────────────────────────────────────────────────────
class CliApp:
    """
    Batch runner: reads a configuration, runs one scenario and exits with a status.

    Exit status is 0 on success, 2 on configuration errors and 3 on any
    numerical or module failure. Failures leave `<out>/<scenario>_error.yaml`.

    ### Attributes
    - **console** (`Console`): Rich console used for all output.
    """

# ─────────────────────────────────────────────────────────────
# 🚧 Function: constructor
# ─────────────────────────────────────────────────────────────
    def __init__(self, console: Optional[Console] = None) -> None:
        self.console: Console = console or Console()

# ─────────────────────────────────────────────────────────────
# 📌 Function: build_parser
# ─────────────────────────────────────────────────────────────
    @staticmethod
    def build_parser() -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="phonon-bs",
            description="Mechanically controlled beam splitter: scenario runner writing CSV artifacts.",
        )
        parser.add_argument("scenario", choices=global_vars.SCENARIOS, help="Scenario to run.")
        parser.add_argument("--config", type=Path, help="JSON or YAML configuration (default: bundled preset).")
        parser.add_argument("--seed", type=int, help="Master seed for trajectory scenarios.")
        parser.add_argument("--out", type=Path, help="Output directory.")
        parser.add_argument(
            "--threads", type=int,
            help=f"Worker processes (default: ${global_vars.THREADS_ENV_VAR}, then config, then available CPUs).",
        )
        parser.add_argument("--quiet", action="store_true", help="No console output; the run log is still written.")
        return parser

# ─────────────────────────────────────────────────────────────
# 📌 Function: resolve_config
# ─────────────────────────────────────────────────────────────
    @staticmethod
    def resolve_config(args: argparse.Namespace) -> RunConfig:
        """
        Configuration of the run with command-line overrides applied.

        ### Raises
        - `ConfigError`: Unreadable file, invalid values, or a scenario that disagrees with the command line.
        """

        if args.config is not None:
            cfg = load_config_file(args.config, default_scenario=args.scenario)
        elif preset_path(args.scenario).is_file():
            cfg = load_config_file(preset_path(args.scenario))
        else:
            cfg = RunConfig(scenario=args.scenario)

        if cfg.scenario != args.scenario:
            raise ConfigValidationError(
                "scenario", f"config names {cfg.scenario!r} but the command line asks for {args.scenario!r}"
            )
        overrides = {}
        if args.seed is not None:
            overrides["master_seed"] = args.seed
        if args.out is not None:
            overrides["output_path"] = str(args.out)
        return replace(cfg, **overrides) if overrides else cfg

# ─────────────────────────────────────────────────────────────
# 📌 Function: main
# ─────────────────────────────────────────────────────────────
    def main(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Runs the command line and returns the exit status.

        ### Args
        - **argv** (`Optional[Sequence[str]]`): Arguments without the program name.

        ### Returns
        - `int`: 0, 2 or 3.
        """

        args = self.build_parser().parse_args(argv)
        vt = ViewTools(self.console, quiet=args.quiet)
        orchestra = ExpOrchestra(vt=vt)
        out_dir: Path = args.out or global_vars.OUTPUT_DIR

        try:
            cfg = self.resolve_config(args)
            out_dir = Path(cfg.output_path) if cfg.output_path else out_dir
            orchestra.load_run(cfg, threads_flag=args.threads)
            summary = orchestra.run_scenario()
            vt.table_run_summary(cfg.scenario, orchestra.hash_id, summary)
            return 0

        except Exception as e:
            # Unexpected exceptions count as module failures
            exit_code = e.exit_code if isinstance(e, PhononBSError) else 3
            error: BaseException = e
            if orchestra.logger:
                orchestra.logger.exception("Run failed with an exception")
        finally:
            orchestra.close_logger()

        vt.console_message("error", str(error).removeprefix("❌ "))
        record = ExpOrchestra.write_error_record(out_dir, args.scenario, error, exit_code)
        if record:
            vt.console_message("info", f"Error record written to {record}", indent=1)
        return exit_code
