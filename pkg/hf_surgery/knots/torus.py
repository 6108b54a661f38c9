"""
Torus knots T(r, s) and their Alexander polynomials.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import List, Sequence

from ..errors import InvalidInputError
from .alexander import AlexanderPoly


@dataclass(frozen=True)
class TorusKnot:
    r: int
    s: int

    def __post_init__(self):
        if not (abs(self.r) > self.s >= 2):
            raise InvalidInputError(
                f"Torus knot parameters need |r| > s >= 2, got ({self.r}, {self.s})"
            )
        if gcd(self.r, self.s) != 1:
            raise InvalidInputError(
                f"Torus knot parameters ({self.r}, {self.s}) are not coprime"
            )

    @property
    def genus(self) -> int:
        return (abs(self.r) - 1) * (self.s - 1) // 2

    def __str__(self) -> str:
        return f"T({self.r},{self.s})"


def _multiply(left: Sequence[int], right: Sequence[int]) -> List[int]:
    result = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a:
            for j, b in enumerate(right):
                result[i + j] += a * b
    return result


def _divide_exact(numerator: Sequence[int], denominator: Sequence[int]) -> List[int]:
    """Long division of integer polynomials (ascending coefficients), monic divisor."""
    remainder = list(numerator)
    degree = len(denominator) - 1
    if denominator[-1] != 1:
        raise ValueError("divisor must be monic")
    quotient = [0] * (len(remainder) - degree)
    for k in range(len(quotient) - 1, -1, -1):
        coefficient = remainder[k + degree]
        quotient[k] = coefficient
        if coefficient:
            for j, b in enumerate(denominator):
                remainder[k + j] -= coefficient * b
    if any(remainder):
        raise ValueError("polynomial division left a remainder")
    return quotient


def _x_power_minus_one(n: int) -> List[int]:
    return [-1] + [0] * (n - 1) + [1]


@lru_cache(maxsize=None)
def torus_alex(r: int, s: int) -> AlexanderPoly:
    """Symmetrized (T^rs - 1)(T - 1) / ((T^r - 1)(T^s - 1))."""
    knot = TorusKnot(r, s)
    r = abs(knot.r)
    numerator = _multiply(_x_power_minus_one(r * s), _x_power_minus_one(1))
    denominator = _multiply(_x_power_minus_one(r), _x_power_minus_one(s))
    ascending = _divide_exact(numerator, denominator)
    genus = knot.genus
    # the quotient has degree 2g and its middle coefficient is a0
    return AlexanderPoly(tuple(ascending[genus:]))
