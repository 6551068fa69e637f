"""Lifetime-optimal compression, modulation and transmit-power policies."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
