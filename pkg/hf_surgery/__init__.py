"""
HF Surgery - Heegaard Floer correction terms of elliptic Seifert fibered
spaces and of Dehn surgeries on knots.

This package computes d-invariants from negative-definite plumbings and from
the surgery formula, and uses them to decide which elliptic manifolds can
arise as surgery on a knot in S^3.
"""

__version__ = "0.1.0"
__license__ = "MIT"

from .lattice import d_invariants, d_plumbing
from .obstruct import match_manifold, run_classification
from .plumbing import to_plumbing
from .seifert import SeifertData, normalize, parse_seifert
from .surgery import Slope, d_surgery

__all__ = [
    "SeifertData",
    "Slope",
    "d_invariants",
    "d_plumbing",
    "d_surgery",
    "match_manifold",
    "normalize",
    "parse_seifert",
    "run_classification",
    "to_plumbing",
]
