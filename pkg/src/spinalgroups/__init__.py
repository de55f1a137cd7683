"""Computations with multi-edge spinal groups acting on the p-adic tree."""

from .errors import SpinalError
from .zmodp import DefiningTuple, CoordinateChange, normalize_defining_tuple
from .words import ReducedWord
from .spinal import SpinalGroup
from .tree import Portrait

__all__ = [
    "SpinalError",
    "DefiningTuple",
    "CoordinateChange",
    "normalize_defining_tuple",
    "ReducedWord",
    "SpinalGroup",
    "Portrait",
]

__version__ = "0.1.0"
