"""
Seifert - Seifert fibered presentations over S^2.

A presentation (b; a1/b1, ..., ar/br) describes surgery on a link with
framings b and -bi/ai. This module owns the text grammar, the Euler number
and first homology, the elliptic type classification, canonical forms and the
enumeration of elliptic manifolds by |H1|.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, List, Optional, Tuple

from .errors import InternalError, InvalidInputError, MethodInapplicableError

logger = logging.getLogger(__name__)


class EllipticType(str, Enum):
    """Elliptic type tag, determined by the multiplicities."""

    I = "I"  # noqa: E741
    O = "O"  # noqa: E741
    T = "T"
    D = "D"
    LENS = "Lens"
    NOT_ELLIPTIC = "NotElliptic"


@dataclass(frozen=True)
class SeifertData:
    """A presentation (b; a1/b1, ..., ar/br)."""

    b: int
    coeffs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        coeffs = tuple((int(a), int(m)) for a, m in self.coeffs)
        for a, m in coeffs:
            if m <= 0:
                raise InvalidInputError(
                    f"Fiber multiplicity must be positive, got {a}/{m}"
                )
            if gcd(a, m) != 1:
                raise InvalidInputError(
                    f"Seifert coefficient {a}/{m} is not reduced "
                    f"(gcd = {gcd(a, m)})"
                )
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(m for _, m in self.coeffs)

    @property
    def fractions(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(a, m) for a, m in self.coeffs)

    def __str__(self) -> str:
        return format_seifert(self)


@dataclass(frozen=True)
class OrientedSeifert:
    """Canonical representative plus an orientation flag.

    ``reversed`` is True when ``data`` describes the oppositely oriented
    manifold from the one that was normalized.
    """

    data: SeifertData
    reversed: bool = False

    def __str__(self) -> str:
        prefix = "-" if self.reversed else ""
        return f"{prefix}{self.data}"


# Grammar: "(b; a1/b1, a2/b2, ...)" with optional whitespace.
_FRACTION = r"[-+]?\d+\s*/\s*\d+"
_SEIFERT_RE = re.compile(
    rf"^\s*\(\s*(?P<b>[-+]?\d+)\s*(?:;\s*(?P<coeffs>{_FRACTION}"
    rf"(?:\s*,\s*{_FRACTION})*)?\s*)?\)\s*$"
)


def parse_seifert(text: str) -> SeifertData:
    """Parse "(b; a1/b1, a2/b2, a3/b3)"."""
    normalized = text.replace("−", "-")
    match = _SEIFERT_RE.match(normalized)
    if not match:
        position = _first_bad_position(normalized)
        raise InvalidInputError(
            f"Malformed Seifert presentation at position {position}: "
            f"{text!r}\n  {' ' * (position + 1)}^ expected "
            f"'(b; a1/b1, a2/b2, ...)'"
        )
    coeffs: List[Tuple[int, int]] = []
    if match.group("coeffs"):
        for part in match.group("coeffs").split(","):
            a, m = part.split("/")
            coeffs.append((int(a), int(m)))
    return SeifertData(int(match.group("b")), tuple(coeffs))


def _first_bad_position(text: str) -> int:
    """Longest prefix that still matches the grammar, for error messages."""
    for end in range(len(text), 0, -1):
        prefix = text[:end]
        if re.match(r"^\s*\(\s*[-+]?\d*\s*(;\s*([-+]?\d+\s*/?\s*\d*\s*,?\s*)*)?$",
                    prefix):
            return end
    return 0


def format_seifert(data: SeifertData) -> str:
    body = ", ".join(f"{a}/{m}" for a, m in data.coeffs)
    return f"({data.b}; {body})" if body else f"({data.b};)"


def euler_number(data: SeifertData) -> Fraction:
    """e(S) = b + sum ai/bi."""
    return data.b + sum(data.fractions, Fraction(0))


def h1_order(data: SeifertData) -> int:
    """|H1| = |b1 b2 b3 e(S)|; 0 encodes infinite H1."""
    product = 1
    for m in data.multiplicities:
        product *= m
    value = abs(product * euler_number(data))
    if value.denominator != 1:
        raise InternalError(f"Non-integral |H1| {value} for {data}")
    return int(value)


def h1_structure(data: SeifertData) -> Tuple[int, ...]:
    """Invariant factors of H1 for elliptic data.

    Dihedral manifolds with even b3 have H1 = Z2 x Z2m; everything else
    elliptic is cyclic.
    """
    order = h1_order(data)
    reduced = reduce_fractions(data)
    mults = sorted(reduced.multiplicities)
    if classify(reduced) is EllipticType.D and mults[2] % 2 == 0:
        return (2, order // 2)
    return (order,)


def reduce_fractions(data: SeifertData) -> SeifertData:
    """Move integer parts into b so every ai/bi lies in (0, 1).

    Fibers with bi = 1 are absorbed into b entirely.
    """
    b = data.b
    coeffs = []
    for a, m in data.coeffs:
        whole = floor(Fraction(a, m))
        b += whole
        rest = a - whole * m
        if rest:
            coeffs.append((rest, m))
    return SeifertData(b, tuple(coeffs))


def reverse_orientation(data: SeifertData) -> SeifertData:
    """Presentation of -S: negate everything, renormalize into (0, 1)."""
    negated = SeifertData(-data.b, tuple((-a, m) for a, m in data.coeffs))
    return reduce_fractions(negated)


def classify(data: SeifertData) -> EllipticType:
    """I/O/T/D/Lens/NotElliptic from the multiset of multiplicities."""
    mults = sorted(m for m in reduce_fractions(data).multiplicities)
    if len(mults) <= 2:
        return EllipticType.LENS
    if len(mults) > 3:
        return EllipticType.NOT_ELLIPTIC
    if mults[0] == 2 and mults[1] == 2:
        return EllipticType.D
    if mults[:2] == [2, 3]:
        return {5: EllipticType.I, 4: EllipticType.O, 3: EllipticType.T}.get(
            mults[2], EllipticType.NOT_ELLIPTIC
        )
    return EllipticType.NOT_ELLIPTIC


def _canonical_in_orientation(data: SeifertData) -> Optional[SeifertData]:
    """(-1; 1/2, 1/3 or 1/2, a3/b3) for this orientation, if one exists."""
    reduced = reduce_fractions(data)
    fibers = sorted(reduced.coeffs, key=lambda c: (c[1], c[0]))
    kind = classify(reduced)
    if kind is EllipticType.D:
        first, second, third = fibers
        # multiplicity-2 fibers are already 1/2 once reduced; with b3 = 2 all
        # three are, and any of them may serve as the third
    else:
        twos = [c for c in fibers if c[1] == 2]
        threes = [c for c in fibers if c[1] == 3]
        unit_threes = [c for c in threes if c[0] == 1]
        if not unit_threes:
            return None
        first = twos[0]
        second = unit_threes[0]
        rest = list(fibers)
        rest.remove(first)
        rest.remove(second)
        third = rest[0]
    a3, b3 = third
    a3 += (reduced.b + 1) * b3
    return SeifertData(-1, (first, second, (a3, b3)))


def normalize(data: SeifertData) -> OrientedSeifert:
    """Canonical representative up to orientation.

    I/O/T become (-1; 1/2, 1/3, a3/b3) and D becomes (-1; 1/2, 1/2, a3/b3).
    When both orientations fit the pattern, the one with e > 0 wins.
    """
    kind = classify(data)
    if kind in (EllipticType.LENS, EllipticType.NOT_ELLIPTIC):
        raise MethodInapplicableError(
            f"Cannot normalize {data}: type {kind.value} is not an elliptic "
            f"three-fiber presentation"
        )
    as_is = _canonical_in_orientation(data)
    flipped = _canonical_in_orientation(reverse_orientation(data))
    if as_is is not None and flipped is not None:
        if euler_number(as_is) > 0:
            flipped = None
        else:
            as_is = None
    if as_is is not None:
        result = OrientedSeifert(as_is, reversed=False)
    elif flipped is not None:
        result = OrientedSeifert(flipped, reversed=True)
    else:
        raise InternalError(f"No canonical form found for {data}")
    logger.debug(f"normalize: {data} -> {result}")
    return result


def same_manifold(first: SeifertData, second: SeifertData) -> Optional[bool]:
    """True if equal as oriented manifolds, False if opposite, None if not
    homeomorphic (as far as canonical forms tell)."""
    a = normalize(first)
    b = normalize(second)
    if a.data != b.data:
        return None
    return a.reversed == b.reversed


def torus_surgery_slope(data: SeifertData) -> Fraction:
    """Trefoil slope (6 a3 - b3)/a3 for canonical I/O/T data (up to sign)."""
    canonical = normalize(data).data
    if classify(canonical) is EllipticType.D:
        raise MethodInapplicableError("Trefoil slope applies to I/O/T only")
    a3, b3 = canonical.coeffs[2]
    return Fraction(6 * a3 - b3, a3)


# Canonical third-fiber multiplicity per type, with the (-1; 1/2, 1/3, .)
# prefix; |H1| = |6 a3 - k| for k in {5, 4, 3}.
_IOT_THIRD = {EllipticType.I: 5, EllipticType.O: 4, EllipticType.T: 3}


def enumerate_elliptic(
    h1_bound: int,
    n_bound: int = 101,
    types: Optional[Iterable[EllipticType]] = None,
    include_even_dihedral: bool = True,
) -> List[OrientedSeifert]:
    """All canonical elliptic non-lens manifolds with |H1| <= h1_bound.

    One entry per manifold up to orientation, sorted by (|H1|, type, data).
    Dihedral families are truncated at b3 <= n_bound. Both b3 parities are
    produced unless ``include_even_dihedral`` is off.
    """
    if h1_bound < 1:
        raise InvalidInputError("h1_bound must be >= 1")
    wanted = set(types) if types is not None else {
        EllipticType.I, EllipticType.O, EllipticType.T, EllipticType.D
    }
    found = {}

    def add(candidate: SeifertData):
        order = h1_order(candidate)
        if order == 0 or order > h1_bound:
            return
        canonical = normalize(candidate)
        found.setdefault(canonical.data, canonical)

    for kind, k in _IOT_THIRD.items():
        if kind not in wanted:
            continue
        bound = (h1_bound + k) // 6 + 1
        for a3 in range(-bound, bound + 1):
            if gcd(a3, k) != 1:
                continue
            add(SeifertData(-1, ((1, 2), (1, 3), (a3, k))))

    if EllipticType.D in wanted:
        for m in range(1, h1_bound // 4 + 1):
            for n in range(2, n_bound + 1):
                if gcd(m, n) != 1:
                    continue
                if n % 2 == 0 and not include_even_dihedral:
                    continue
                add(SeifertData(-1, ((1, 2), (1, 2), (m, n))))

    result = sorted(
        found.values(),
        key=lambda s: (
            h1_order(s.data), classify(s.data).value, s.data.coeffs
        ),
    )
    logger.info(
        f"enumerate_elliptic: {len(result)} manifolds with |H1| <= "
        f"{h1_bound}, b3 <= {n_bound}"
    )
    return result
