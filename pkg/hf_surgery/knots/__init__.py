"""
Knots - Alexander polynomials of L-space knot candidates and torus knots.

This module keeps a registry of the named polynomials used throughout the
classification tables, so they can be looked up by name from the CLI.
"""

from typing import Dict

from ..errors import InvalidInputError
from .alexander import (
    AlexanderPoly,
    enumerate_lspace_alex,
    from_exponents,
    is_lspace_alex,
    max_genus,
    parse_alex,
)
from .torus import TorusKnot, torus_alex

# Registry of named polynomials; "g" is the full alternating polynomial of
# genus g, primes mark sparser ones.
_NAMED: Dict[str, AlexanderPoly] = {
    "1": from_exponents(1, []),
    "2": from_exponents(2, [1]),
    "2'": from_exponents(2, []),
    "3": from_exponents(3, [2, 1]),
    "4": from_exponents(4, [3, 2, 1]),
    "4'": from_exponents(4, [3, 1]),
    "5": from_exponents(5, [4, 3, 2, 1]),
    "6": from_exponents(6, [5, 4, 3, 2, 1]),
    "7": from_exponents(7, [6, 5, 4, 3, 2, 1]),
    "8": from_exponents(8, [7, 6, 5, 4, 3, 2, 1]),
    "8'": from_exponents(8, [7, 5, 4, 2, 1]),
    "8''": from_exponents(8, [7, 5, 3, 1]),
    "9'": from_exponents(9, [8, 5, 4, 3, 2]),
}


def get_available_polynomials() -> Dict[str, AlexanderPoly]:
    """Get all named polynomials."""
    return _NAMED.copy()


def get_polynomial(name: str) -> AlexanderPoly:
    """Get a named polynomial; accepts "2'" or "D2'" style names."""
    key = name.strip()
    if key[:1] in ("D", "d", "Δ"):
        key = key[1:]
    key = key.replace("′", "'").replace("″", "''")
    if key not in _NAMED:
        raise InvalidInputError(
            f"Polynomial '{name}' not found. Available: {list(_NAMED.keys())}"
        )
    return _NAMED[key]


def register_polynomial(name: str, poly: AlexanderPoly) -> None:
    """Register a new named polynomial."""
    _NAMED[name] = poly


def name_of(poly: AlexanderPoly) -> str:
    """Registry name if there is one, else the coefficient text."""
    for name, known in _NAMED.items():
        if known == poly:
            return f"D{name}"
    return poly.to_text()


__all__ = [
    "AlexanderPoly",
    "TorusKnot",
    "enumerate_lspace_alex",
    "from_exponents",
    "get_available_polynomials",
    "get_polynomial",
    "is_lspace_alex",
    "max_genus",
    "name_of",
    "parse_alex",
    "register_polynomial",
    "torus_alex",
]
