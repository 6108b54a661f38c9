"""
Symmetrized Alexander polynomials of L-space knots.

A polynomial a0 + sum ai (T^i + T^-i) is stored as the coefficient tuple
(a0, a1, ..., ag). L-space knots are fibered with genus g, so ag = 1 and the
nonzero coefficients alternate in sign going down from the top.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING, List, Sequence, Tuple, Union

from ..errors import InvalidInputError

if TYPE_CHECKING:
    from ..surgery import Slope

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlexanderPoly:
    """Coefficients (a0, a1, ..., ag) of a symmetrized Alexander polynomial."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs or coeffs == (0,):
            raise InvalidInputError("Alexander polynomial must be nonzero")
        if coeffs[0] + 2 * sum(coeffs[1:]) != 1:
            raise InvalidInputError(
                f"Alexander polynomial {coeffs} does not evaluate to 1 at T=1"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def genus(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exponents(self) -> Tuple[int, ...]:
        """Nonnegative exponents with nonzero coefficient, descending."""
        return tuple(
            i for i in range(self.genus, -1, -1) if self.coeffs[i] != 0
        )

    def coefficient(self, i: int) -> int:
        i = abs(i)
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def torsion(self, c: int) -> int:
        """V_c = sum_{j >= 1} j a_{c+j}; zero once c >= g."""
        return sum(
            j * self.coefficient(c + j) for j in range(1, self.genus - c + 1)
        )

    def torsions(self) -> Tuple[int, ...]:
        """(V_0, ..., V_g) via suffix sums, V_c = sum_{k > c} (k - c) a_k."""
        result = [0] * (self.genus + 1)
        count = weighted = 0
        for c in range(self.genus - 1, -1, -1):
            count += self.coeffs[c + 1]
            weighted += (c + 1) * self.coeffs[c + 1]
            result[c] = weighted - c * count
        return tuple(result)

    def is_lspace_type(self) -> bool:
        """Top coefficient 1 and alternating +-1 nonzero coefficients."""
        sign = 1
        for i in self.exponents:
            if self.coeffs[i] != sign:
                return False
            sign = -sign
        return True

    def to_text(self) -> str:
        """Coefficient syntax "a_g,...,a_1,a_0"."""
        return ",".join(str(a) for a in reversed(self.coeffs))

    def __str__(self) -> str:
        """Top half only, as in "T^2 - T + 1 ..."."""
        text = ""
        for i in self.exponents:
            body = "1" if i == 0 else ("T" if i == 1 else f"T^{i}")
            sign = "-" if self.coeffs[i] < 0 else "+"
            text = f"{text} {sign} {body}" if text else (
                body if sign == "+" else f"-{body}"
            )
        return f"{text} ..." if self.genus else text


def from_exponents(genus: int, middle: Sequence[int]) -> AlexanderPoly:
    """Alternating polynomial on exponents {genus} u middle u {0}."""
    coeffs = [0] * (genus + 1)
    sign = 1
    for i in sorted(set(middle) | {genus, 0}, reverse=True):
        coeffs[i] = sign
        sign = -sign
    return AlexanderPoly(tuple(coeffs))


def enumerate_lspace_alex(g_max: int) -> List[AlexanderPoly]:
    """Every alternating polynomial with 1 <= genus <= g_max.

    Genus g contributes 2^(g-1) polynomials, one per subset of intermediate
    exponents. Order is by genus, then subset size, then lexicographic subset.
    """
    if g_max < 1:
        raise InvalidInputError(f"g_max must be >= 1, got {g_max}")
    result = []
    for genus in range(1, g_max + 1):
        for size in range(genus):
            for middle in combinations(range(genus - 1, 0, -1), size):
                poly = from_exponents(genus, middle)
                if not poly.is_lspace_type():
                    raise AssertionError(f"Enumerated non-alternating {poly}")
                result.append(poly)
    logger.debug(f"enumerate_lspace_alex({g_max}): {len(result)} polynomials")
    return result


def max_genus(slope: Union[Fraction, "Slope"]) -> int:
    """Largest g with 2g - 1 <= p/q, i.e. floor((p + q) / 2q)."""
    p, q = _slope_parts(slope)
    if p <= 0 or q <= 0:
        raise InvalidInputError(f"Slope must be positive, got {p}/{q}")
    return (p + q) // (2 * q)


def _slope_parts(slope) -> Tuple[int, int]:
    if hasattr(slope, "p") and hasattr(slope, "q"):
        return int(slope.p), int(slope.q)
    value = Fraction(slope)
    return value.numerator, value.denominator


def parse_alex(text: str) -> AlexanderPoly:
    """Parse "a_g,...,a_1,a_0" (top coefficient first)."""
    parts = [part.strip() for part in text.replace("−", "-").split(",")]
    try:
        values = [int(part) for part in parts]
    except ValueError:
        raise InvalidInputError(
            f"Malformed Alexander polynomial {text!r}: expected integers "
            f"'a_g,...,a_1,a_0'"
        )
    return AlexanderPoly(tuple(reversed(values)))


def is_lspace_alex(poly: AlexanderPoly) -> bool:
    return poly.genus >= 1 and poly.is_lspace_type()
