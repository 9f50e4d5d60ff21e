#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# main.py

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Description**: Entry point for the `phonon-bs` batch runner
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


# ─────────────────────────────────────────────────────────────────────────────
# Standard Library Imports
import sys
from typing import Optional, Sequence

# ─────────────────────────────────────────────────────────────────────────────
# Third-Party Imports
# (None used directly in this file)

# ─────────────────────────────────────────────────────────────────────────────
# Local Application Imports
# (None used directly in this file)


# ─────────────────────────────────────────────────────────────
# 📌 Function: launch_cli
# ─────────────────────────────────────────────────────────────
def launch_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the PhononBS command line and returns its exit status.
    """
    from phonon_bs.cli import CliApp
    return CliApp().main(argv)

# ─────────────────────────────────────────────────────────────
# 📌 Function: main
# ─────────────────────────────────────────────────────────────
def main() -> None:
    """
    Main entry point for PhononBS.
    """
    sys.exit(launch_cli())

# ─────────────────────────────────────────────────────────────
# 🚀 Main
# ─────────────────────────────────────────────────────────────
if __name__ == "__main__":
    main()
