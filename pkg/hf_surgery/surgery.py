"""
Surgery - Correction terms of p/q-surgery on knots in S^3.

The lens space recursion gives d(L(p, q), i); an L-space knot shifts each
value by -2 V_c, where V_c is read off the Alexander polynomial. Moser's
trichotomy identifies surgeries on torus knots.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Tuple, Union

from .errors import InternalError, InvalidInputError, MethodInapplicableError
from .knots.alexander import AlexanderPoly
from .knots.torus import TorusKnot
from .seifert import SeifertData

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Slope:
    """A positive surgery slope p/q in lowest terms."""

    p: int
    q: int = 1

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise InvalidInputError(
                f"Slope must be positive, got {self.p}/{self.q}"
            )
        if gcd(self.p, self.q) != 1:
            raise InvalidInputError(f"Slope {self.p}/{self.q} is not reduced")

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


_SLOPE_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_slope(text: str) -> Slope:
    """Parse "p/q" or "p"."""
    match = _SLOPE_RE.match(text)
    if not match:
        raise InvalidInputError(f"Malformed slope {text!r}: expected 'p/q'")
    return Slope(int(match.group(1)), int(match.group(2) or 1))


@lru_cache(maxsize=None)
def d_lens(p: int, q: int, i: int) -> Fraction:
    """d(L(p, q), i) by the reciprocity recursion; L(1, q) is S^3."""
    if p == 1:
        return Fraction(0)
    if not 0 < q < p:
        raise InvalidInputError(f"d_lens needs 0 < q < p, got p={p}, q={q}")
    if gcd(p, q) != 1:
        raise InvalidInputError(f"d_lens needs gcd(p, q) = 1, got p={p}, q={q}")
    if not 0 <= i < p + q:
        raise InvalidInputError(f"d_lens index {i} outside [0, {p + q})")
    head = -Fraction(p * q - (2 * i + 1 - p - q) ** 2, 4 * p * q)
    return head - d_lens(q, p % q, i % q)


def lens_d_multiset(p: int, q: int) -> Tuple[Fraction, ...]:
    """Sorted d(L(p, q), i) over i in [0, p)."""
    if p == 1:
        return (Fraction(0),)
    return tuple(sorted(d_lens(p, q % p, i) for i in range(p)))


def knot_correction(poly: AlexanderPoly, c: int) -> Fraction:
    """-2 V_c; zero for c >= genus."""
    if c < 0:
        raise InvalidInputError(f"knot_correction needs c >= 0, got {c}")
    return Fraction(-2 * poly.torsion(c))


def self_conjugate_index(p: int, q: int) -> int:
    """An i in [0, p) with 2i = q - 1 mod p."""
    if p == 1:
        return 0
    if p % 2:
        return (q - 1) * pow(2, -1, p) % p
    return (q - 1) // 2


def spinc_label(p: int, q: int, i: int) -> int:
    """Fold i in [0, p) to a label in [0, p // 2] by conjugation.

    Label 0 is the self-conjugate structure; for even p so is p // 2.
    """
    k = (i - self_conjugate_index(p, q)) % p
    return min(k, p - k)


def label_multiplicity(p: int, label: int) -> int:
    if label == 0 or 2 * label == p:
        return 1
    return 2


@dataclass(frozen=True)
class SurgeryD:
    """d(S^3_{p/q}(K), i) for i in [0, p), with the folded labels."""

    slope: Slope
    poly: AlexanderPoly
    values: Tuple[Fraction, ...]
    labeled: Dict[int, Fraction] = field(hash=False)

    @property
    def multiset(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(self.values))

    def row(self) -> List[Fraction]:
        """Labeled values in label order 0, 1, ..., p // 2."""
        return [self.labeled[label] for label in sorted(self.labeled)]


def d_surgery(slope: Union[Slope, Fraction], poly: AlexanderPoly) -> SurgeryD:
    """Correction terms of p/q-surgery on an L-space knot with polynomial ``poly``."""
    if not isinstance(slope, Slope):
        value = Fraction(slope)
        slope = Slope(value.numerator, value.denominator)
    p, q = slope.p, slope.q
    if slope.value < 2 * poly.genus - 1:
        raise MethodInapplicableError(
            f"not an L-space slope: {slope} < 2g - 1 = {2 * poly.genus - 1}"
        )
    reduced_q = q % p if p > 1 else 0
    values = []
    labeled: Dict[int, Fraction] = {}
    for i in range(p):
        c = min(i // q, (p + q - 1 - i) // q)
        value = d_lens(p, reduced_q, i) + knot_correction(poly, c)
        values.append(value)
        label = spinc_label(p, q, i)
        if labeled.setdefault(label, value) != value:
            raise InternalError(
                f"Conjugate structures disagree for {slope}, label {label}"
            )
    logger.debug(f"d_surgery({slope}, {poly.to_text()}): {len(values)} values")
    return SurgeryD(slope, poly, tuple(values), labeled)


@dataclass(frozen=True)
class LensSpace:
    p: int
    q: int

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


@dataclass(frozen=True)
class ConnectedSum:
    first: LensSpace
    second: LensSpace

    def __str__(self) -> str:
        return f"{self.first} # {self.second}"


@dataclass(frozen=True)
class Seifert:
    data: SeifertData

    def __str__(self) -> str:
        return str(self.data)


@dataclass(frozen=True)
class MultiplicitiesOnly:
    r: int
    s: int
    third: int

    def __str__(self) -> str:
        return f"Seifert fibered with multiplicities ({self.r}, {self.s}, {self.third})"


MoserResult = Union[LensSpace, ConnectedSum, Seifert, MultiplicitiesOnly]


def _third_fiber(q: int, denominator: int) -> Tuple[int, int]:
    if denominator < 0:
        return (-q, -denominator)
    return (q, denominator)


def moser_classify(r: int, s: int, slope: Union[Slope, Fraction]) -> MoserResult:
    """S^3_{p/q}(T(r, s)) for r > s >= 2 and a positive slope."""
    knot = TorusKnot(r, s)
    if knot.r < 0:
        raise InvalidInputError(
            f"moser_classify takes r > 0; mirror {knot} and negate the slope"
        )
    if not isinstance(slope, Slope):
        value = Fraction(slope)
        slope = Slope(value.numerator, value.denominator)
    p, q = slope.p, slope.q
    rsq = r * s * q
    if p == rsq:
        return ConnectedSum(LensSpace(r, s), LensSpace(s, r))
    if abs(p - rsq) == 1:
        return LensSpace(p, rsq % p)
    if s == 2:
        coeffs = ((1, 2), ((r - 1) // 2, r), _third_fiber(q, 2 * r * q - p))
    elif (r, s) == (4, 3):
        coeffs = ((2, 3), (1, 4), _third_fiber(q, 12 * q - p))
    elif (r, s) == (5, 3):
        coeffs = ((1, 3), (3, 5), _third_fiber(q, 15 * q - p))
    else:
        return MultiplicitiesOnly(r, s, abs(rsq - p))
    return Seifert(SeifertData(-1, coeffs))
