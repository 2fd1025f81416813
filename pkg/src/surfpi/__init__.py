"""Fundamental groups of surfaces and mapping-class generator actions on them."""

__version__ = "0.1.0"

from .errors import SurfPiError
from .surface import SurfaceKind, nonorientable, orientable, parse_surface
from .words import Alphabet, GenSym, Word, parse_word

__all__ = [
    "Alphabet",
    "GenSym",
    "SurfPiError",
    "SurfaceKind",
    "Word",
    "__version__",
    "nonorientable",
    "orientable",
    "parse_surface",
    "parse_word",
]
