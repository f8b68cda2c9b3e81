"""Stability of circulant graphs via automorphisms of the canonical double cover."""

from .circulant import (
    CirculantGraph,
    ConnectionSet,
    ZModN,
    normalize_connection_set,
    parse_circulant,
)
from .products import DenseGraph, double_cover

__version__ = "0.1.0"

__all__ = [
    "CirculantGraph",
    "ConnectionSet",
    "DenseGraph",
    "ZModN",
    "double_cover",
    "normalize_connection_set",
    "parse_circulant",
]
