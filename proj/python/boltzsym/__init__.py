"""Sourced BKW model: series and grid solvers, symmetry checks, invariant solutions."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
