#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# utils

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""

from .sysaux import SysAuxiliar
from .viewtools import ViewTools

__version__ = '1.0.0'
