"""Flattened step and point projectors, dispersion relations and graded boundaries."""

from ._flatproj import *  # noqa: F401,F403
from ._flatproj import __version__, compute

__all__ = [name for name in dir() if not name.startswith("_")]
