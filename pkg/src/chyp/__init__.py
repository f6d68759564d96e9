"""Computations with complex hyperbolic triangle groups and the genus-two
surface group inside the (3, 3, 9) triangle group."""

from ._accel import BACKEND
from .errors import ChypError

__all__ = ["BACKEND", "ChypError"]
__version__ = "0.1.0"
