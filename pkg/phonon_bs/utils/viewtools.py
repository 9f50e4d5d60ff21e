#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# viewtools.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Console utilities: styled messages, progress bars and run summaries.
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import logging
from contextlib import contextmanager
from typing import Any, Iterator, Mapping, Optional

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.progress import Progress, BarColumn, TimeRemainingColumn

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
# (None used directly in this file)

# ─────────────────────────────────────────────────────────────
# 🖥️ View Tools Class
# ─────────────────────────────────────────────────────────────
class ViewTools:
    """
    Utility class for styled console messages, progress display and summary tables.

    ### Attributes
    - **console** (`Console`): Rich console instance for styled output.
    - **quiet** (`bool`): Suppresses console output; logging still happens.
    """


# ─────────────────────────────────────────────────────────────────────────────
# 🚧 Function: constructor
# ─────────────────────────────────────────────────────────────────────────────
    def __init__(self, console: Optional[Console] = None, quiet: bool = False) -> None:
        """
        Initializes the ViewTools instance.

        ### Args
        - **console** (`Optional[Console]`): Rich console instance. If not provided, a default one is created.
        - **quiet** (`bool`): Silence console output.
        """

        self.console: Console = console or Console()
        self.quiet: bool = quiet


# ─────────────────────────────────────────────────────────────────────────────
# ⌨️ Function: console_message
# ─────────────────────────────────────────────────────────────────────────────
    def console_message(
        self,
        type: str,
        message: str,
        title_emoji: str = "🔷",
        indent: int = 0,
        logger: Optional[logging.Logger] = None
    ) -> None:
        """
        Displays a styled message in the console with optional indentation and logging.

        With a logger the plain-text message goes to `logger.<type>` ("caution" maps to
        `warning`, unknown types to `info`); without one it is printed unless quiet.

        ### Args
        - **type** (`str`): Type of message (e.g., `"success"`, `"error"`, `"info"`).
        - **message** (`str`): Content of the message to display.
        - **title_emoji** (`str`): Emoji used for title-type messages. Defaults to `"🔷"`.
        - **indent** (`int`): Indentation level for visual hierarchy. Defaults to `0`.
        - **logger** (`Optional[Logger]`): Logger instance to log the plain-text message. Defaults to `None`.
        """

        styles = {
            "success": ("✅", "[green]"),
            "error": ("❌", "[red]"),
            "caution": ("⚠️", "[yellow]"),
            "info": ("ℹ️", "[italic cyan]"),
            "title": (f"{title_emoji}", "[bold blue]")
        }

        emoji, style = styles.get(type.lower(), ("❔", "[white]"))
        prefix = "" if indent == 0 else "│   " * (indent - 1) + "├── "
        lines = message.split("\n")

        if logger:
            plain_message = "\n".join(f"{prefix}{emoji} {line}" for line in lines)
            level = "warning" if type.lower() == "caution" else type.lower()
            log_func = getattr(logger, level, logger.info)
            log_func(plain_message)
        elif not self.quiet:
            self.console.print("\n".join(
                f"{prefix}{emoji} {style}{line}{style.replace('[', '[/')}" for line in lines
            ))


# ─────────────────────────────────────────────────────────────────────────────
# 🔄 Function: progress
# ─────────────────────────────────────────────────────────────────────────────
    @contextmanager
    def progress(self, message: str, total: int) -> Iterator[Any]:
        """
        Progress bar over a known number of jobs.

        Yields a callable that advances the bar by one job; it accepts and ignores
        any arguments so it can be passed straight to `SysAuxiliar.parallel_map`.

        ### Args
        - **message** (`str`): Description shown next to the bar.
        - **total** (`int`): Number of jobs.
        """

        if self.quiet:
            yield lambda *_: None
            return

        with Progress(
            "[progress.description]{task.description}",
            BarColumn(),
            "[progress.percentage]{task.percentage:>3.0f}%",
            TimeRemainingColumn(),
            console=self.console,
            transient=True
        ) as progress:
            task = progress.add_task(message, total=total)
            yield lambda *_: progress.advance(task)


# ─────────────────────────────────────────────────────────────────────────────
# 🧮 Function: table_run_summary
# ─────────────────────────────────────────────────────────────────────────────
    def table_run_summary(self, scenario: str, run_id: str, summary: Mapping[str, Any]) -> None:
        """
        Displays the closing summary of a scenario run.

        ### Args
        - **scenario** (`str`): Scenario name.
        - **run_id** (`str`): Run HashID.
        - **summary** (`Mapping[str, Any]`): Quantity name to value.
        """

        if self.quiet:
            return

        if not summary:
            self.console.print(Panel.fit(
                "[bold yellow]Run produced no summary values.[/bold yellow]",
                title=f"🧪 {scenario} ({run_id})",
                border_style="red"
            ))
            return

        table = Table(
            title=f"🧪 {scenario} ({run_id})",
            show_header=True,
            header_style="bold cyan",
            title_justify="left"
        )
        table.add_column("Quantity", justify="left", overflow="fold")
        table.add_column("Value", justify="right", overflow="fold")

        for key, value in summary.items():
            text = format(value, ".6g") if isinstance(value, float) else str(value)
            table.add_row(key, text)

        self.console.print(table)
