#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
# phonon_bs

**Project**: PhononBS - Mechanically Controlled Beam Splitter Toolkit
**Author**: PhononBS contributors
**Created**: 2026-10-19
**Version**: 1.0.0
**License**: GPLv3
"""


from .core.data_ex import DataEx
from .core.exp_orchestra import ExpOrchestra
from .utils import SysAuxiliar, ViewTools

__version__ = '1.0.0'
