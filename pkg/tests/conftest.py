"""Shared fixtures for the PhononBS test suite."""

import logging

import pytest

from phonon_bs.core.hilbert import ModeDims
from phonon_bs.core.semiclassical import SystemParams


@pytest.fixture
def workhorse() -> SystemParams:
    """Semiclassical beam splitter at κ = γ = 1, ḡ = 1/3."""
    return SystemParams.semiclassical(1.0 / 3.0)


@pytest.fixture
def small_dims() -> ModeDims:
    return ModeDims(2, 2, 3)


@pytest.fixture
def quiet_logger() -> logging.Logger:
    logger = logging.getLogger("phonon_bs_tests")
    logger.addHandler(logging.NullHandler())
    logger.propagate = False
    return logger
