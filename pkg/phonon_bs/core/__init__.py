#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# core

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3

Numerical modules are imported by path (`phonon_bs.core.hilbert`, ...);
the run orchestrator and CSV exporter are re-exported by `phonon_bs`.
"""


__version__ = '1.0.0'
