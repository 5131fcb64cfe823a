"""Nonuniform signal constellations from arithmetic Fuchsian groups.

Codes are orbits ``+-g(tau)`` of a point under unit groups of quaternion
algebras, decoded by reducing the received point into a fundamental domain.
"""

from .codebook import Codebook, build_code, choose_S, construct, qam
from .decode import FAILURE, decode, decode_batch, ml_decode
from .exact import QuadHalfInt, QuadMatrix
from .fuchsian import catalog
from .groups import GroupElement

__all__ = [
    "Codebook", "FAILURE", "GroupElement", "QuadHalfInt", "QuadMatrix", "build_code",
    "catalog", "choose_S", "construct", "decode", "decode_batch", "ml_decode", "qam",
]
__version__ = "0.1.0"
