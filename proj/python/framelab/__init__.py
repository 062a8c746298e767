"""Orbit frames, Carleson interpolation and model spaces on finite sections."""

from ._core import *  # noqa: F401,F403
from ._core import FramelabError, PRNG, __version__  # noqa: F401
