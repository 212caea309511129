"""Quaternion attitude representations, kinematics and simulations."""

from ._attikit import *  # noqa: F401,F403
from ._attikit import AttikitError, GimbalLockSingularity, ParseError

__all__ = [name for name in dir() if not name.startswith("_")]
