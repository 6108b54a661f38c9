"""
Tables - Regenerate reference correction-term tables from first principles
and compare them with embedded golden copies.

small-h1: d of the elliptic manifolds with |H1| < 10.
dihedral-terms: constant and n-dependent terms of (-1; 1/2, 1/2, m/n), 4m <= 32.
dihedral-surgeries: d of p-surgery on the named polynomials that match a
dihedral manifold, with the matching n (n > 0 means Y = -S^3_p(K)).

Printed values that the regeneration corrects are kept verbatim in the golden
copies and listed in the errata maps; such rows carry a known discrepancy.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from operator import and_
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactmath import format_rational
from .knots import get_polynomial
from .lattice import d_invariants
from .plumbing import to_plumbing
from .seifert import SeifertData
from .surgery import Slope, d_surgery

logger = logging.getLogger(__name__)

F = Fraction

# Symbolic entries (a, b, den) stand for (a n + b) / den.
Linear = Tuple[int, int, int]


def _const(value: Fraction) -> Linear:
    value = Fraction(value)
    return (0, value.numerator, value.denominator)


def _neg_n(offset: int, den: int) -> Linear:
    """-(n + offset) / den."""
    return (-1, -offset, den)


def evaluate(entry: Linear, n: int) -> Fraction:
    a, b, den = entry
    return Fraction(a * n + b, den)


def _iot(a3: int, b3: int) -> Callable[[int], SeifertData]:
    return lambda n: SeifertData(-1, ((1, 2), (1, 3), (a3, b3)))


def _dihedral(m: int) -> Callable[[int], SeifertData]:
    return lambda n: SeifertData(-1, ((1, 2), (1, 2), (m, n)))


# |H1| -> (manifold in canonical orientation, entries)
SMALL_H1_GOLDEN: Dict[int, Tuple[Callable[[int], SeifertData], List[Linear]]] = {
    1: (_iot(1, 5), [_const(F(-2))]),
    2: (_iot(1, 4), [_const(F(-7, 4)), _const(F(-1, 4))]),
    3: (_iot(1, 3), [_const(F(-1, 6)), _const(F(-3, 2)), _const(F(-1, 6))]),
    4: (_dihedral(1), [_neg_n(2, 4), _const(F(0)), _const(F(0)), _neg_n(-2, 4)]),
    7: (_iot(2, 5), [
        _const(F(1, 14)), _const(F(-3, 14)), _const(F(-19, 14)),
        _const(F(-1, 2)), _const(F(-19, 14)), _const(F(-3, 14)),
        _const(F(1, 14)),
    ]),
    8: (_dihedral(2), [
        _neg_n(-4, 8), _const(F(1, 4)), _neg_n(4, 8), _const(F(-1, 4)),
        _const(F(-1, 4)), _neg_n(4, 8), _const(F(1, 4)), _neg_n(-4, 8),
    ]),
    9: (_iot(2, 3), [
        _const(F(0)), _const(F(-10, 9)), _const(F(-4, 9)), _const(F(2, 9)),
        _const(F(0)), _const(F(2, 9)), _const(F(-4, 9)), _const(F(-10, 9)),
        _const(F(0)),
    ]),
}

SYMBOLIC_N = (3, 5, 7, 9, 11)

# (m, n mod m) -> (constant terms, offsets c of the terms -(n + c)/4m)
DIHEDRAL_TERMS_GOLDEN: Dict[Tuple[int, int], Tuple[List[Fraction], List[int]]] = {
    (1, 1): ([F(0)], [2, -2]),
    (2, 1): ([F(1, 4), F(-1, 4)], [-4, 4]),
    (3, 1): ([F(1, 2), F(-1, 6)], [4, -4, 8, -8]),
    (4, 1): ([F(0), F(3, 4), F(-1, 4)], [2, -14, -6, 10]),
    (5, 1): ([F(1), F(-1, 5), F(1, 5)], [-2, -22, 10, -10, 14, -6]),
    (5, 2): ([F(0), F(2, 5), F(-2, 5)], [-2, -10, 10, -14, 6, 18]),
    (6, 1): ([F(5, 4), F(-1, 4), F(-1, 12), F(-5, 12)],
             [16, 8, -8, -32, -16, -8]),
    (7, 1): ([F(1, 14), F(9, 14), F(3, 2), F(-3, 14)],
             [-8, -44, -24, -16, -12, 4, 16, 20]),
    (7, 2): ([F(1, 14), F(9, 14), F(-3, 14), F(-1, 2)],
             [12, 8, -20, -4, 4, 24, -24, -16]),
    (7, 3): ([F(3, 14), F(1, 2), F(-1, 14), F(-9, 14)],
             [4, -8, 20, -20, 8, -16, 12, 32]),
    (8, 1): ([F(7, 8), F(1, 4), F(-1, 4), F(-1, 8), F(-7, 4)],
             [-26, -58, -2, -34, 14, -18, 22, -10]),
    (8, 3): ([F(5, 8), F(1, 4), F(-1, 4), F(-3, 8), F(-1, 4)],
             [-22, 10, -30, 2, -6, 26, 18, -14]),
}

# Printed constants the regenerated terms correct: (m, k) -> (printed, value).
DIHEDRAL_TERMS_ERRATA: Dict[Tuple[int, int], Tuple[Fraction, Fraction]] = {
    (6, 1): (F(-5, 12), F(5, 12)),
    (8, 1): (F(-7, 4), F(7, 4)),
}


def _row(*values: str) -> List[Fraction]:
    return [Fraction(v) for v in values]


_TAIL_20 = ("-1/5", "-1/4")
_TAIL_24 = ("1/8", "-1/12", "-5/24", "-1/4")
_TAIL_28 = ("9/14", "9/28", "1/14", "-3/28", "-3/14", "-1/4")
_TAIL_32 = ("41/32", "7/8", "17/32", "1/4", "1/32", "-1/8", "-7/32", "-1/4")

# (polynomial name, p, printed n, row at labels 0..p/2)
DIHEDRAL_SURGERY_GOLDEN: List[Tuple[str, int, int, List[Fraction]]] = [
    ("1", 4, -3, _row("-5/4", "0", "-1/4")),
    ("1", 8, 3, _row("-1/4", "7/8", "1/4", "-1/8", "-1/4")),
    ("2", 8, -5, _row("-1/4", "-9/8", "1/4", "-1/8", "-1/4")),
    ("2", 12, 5, _row("3/4", "-1/6", "13/12", "1/2", "1/12", "-1/6", "-1/4")),
    ("3", 12, -7, _row("-5/4", "-1/6", "-11/12", "1/2", "1/12", "-1/6", "-1/4")),
    ("3", 16, 7, _row("-1/4", "13/16", "0", "21/16", "3/4", "5/16", "0",
                      "-3/16", "-1/4")),
    ("4", 16, -9, _row("-1/4", "-19/16", "0", "-11/16", "3/4", "5/16", "0",
                       "-3/16", "-1/4")),
    ("4", 20, 9, _row("3/4", "-1/5", "19/20", "1/5", "31/20", "1", "11/20",
                      "1/5", "-1/20", *_TAIL_20)),
    ("5", 20, -11, _row("-5/4", "-1/5", "-21/20", "1/5", "-9/20", "1",
                        "11/20", "1/5", "-1/20", *_TAIL_20)),
    ("5", 24, 11, _row("-1/4", "19/24", "-1/12", "9/8", "5/12", "43/24",
                       "5/4", "19/24", "5/12", *_TAIL_24)),
    ("6", 24, -13, _row("-1/4", "-29/24", "-1/12", "-7/8", "5/12", "-5/24",
                        "5/4", "19/24", "5/12", *_TAIL_24)),
    ("8'", 28, -5, _row("3/4", "-3/14", "25/28", "1/14", "-19/28", "9/14",
                        "1/28", "-1/2", "29/28", *_TAIL_28)),
    ("9'", 28, 11, _row("3/4", "-3/14", "-31/28", "1/14", "-19/28", "9/14",
                        "1/28", "-1/2", "-27/28", *_TAIL_28)),
    ("6", 28, 13, _row("3/4", "-3/14", "25/28", "1/14", "37/28", "9/14",
                       "57/28", "3/2", "29/28", *_TAIL_28)),
    ("7", 28, -15, _row("-5/4", "-3/14", "-31/28", "1/14", "-19/28", "9/14",
                        "1/28", "3/2", "29/28", *_TAIL_28)),
    ("8''", 32, -9, _row("-1/4", "25/32", "-1/8", "-31/32", "1/4", "49/32",
                         "7/8", "9/32", "7/4", *_TAIL_32)),
    ("7", 32, 15, _row("-1/4", "25/32", "-1/8", "33/32", "1/4", "49/32",
                       "7/8", "73/32", "7/4", *_TAIL_32)),
    ("8", 32, -17, _row("-1/4", "-39/32", "-1/8", "-31/32", "1/4", "-15/32",
                        "7/8", "9/32", "7/4", *_TAIL_32)),
]

# Printed n values the regenerated match corrects: (name, p) -> (n, reason).
DIHEDRAL_SURGERY_ERRATA: Dict[Tuple[str, int], Tuple[Optional[int], str]] = {
    ("8'", 28): (5, "the row equals d of -(-1; 1/2, 1/2, 7/5)"),
    ("9'", 28): (-11, "the row equals d of (-1; 1/2, 1/2, 7/11)"),
    ("8''", 32): (None, "d of (-1; 1/2, 1/2, 8/9) holds -23/32 twice where "
                        "this row holds 41/32 twice"),
}

# Largest n checked when locating where a dihedral-terms row starts to hold.
HOLDS_CHECK_MAX = 101


@lru_cache(maxsize=None)
def _d_multiset(data: SeifertData) -> Tuple[Fraction, ...]:
    return d_invariants(to_plumbing(data)).multiset


def _dihedral_multiset(m: int, n: int) -> Tuple[Fraction, ...]:
    return _d_multiset(SeifertData(-1, ((1, 2), (1, 2), (m, n))))


@dataclass
class SmallH1Row:
    h1: int
    n: Optional[int]
    manifold: SeifertData
    values: List[Fraction]
    expected: List[Fraction]

    @property
    def matches(self) -> bool:
        return sorted(self.values) == sorted(self.expected)


def small_h1_table(n_values: Sequence[int] = SYMBOLIC_N) -> List[SmallH1Row]:
    """Concrete rows once; symbolic rows at each n in ``n_values``."""
    rows = []
    for h1, (build, entries) in SMALL_H1_GOLDEN.items():
        symbolic = any(a for a, _, _ in entries)
        for n in (n_values if symbolic else [1]):
            if symbolic and gcd(n, 2) != 1:
                continue
            data = build(n)
            rows.append(SmallH1Row(
                h1=h1,
                n=n if symbolic else None,
                manifold=data,
                values=list(_d_multiset(data)),
                expected=sorted(evaluate(e, n) for e in entries),
            ))
    return rows


def family_members(m: int, k: int, count: int = 3,
                   start: Optional[int] = None) -> List[int]:
    """The first ``count`` odd n > start with n = k mod m and gcd(m, n) = 1."""
    n = start if start is not None else 4 * m
    found = []
    while len(found) < count:
        n += 1
        if n % 2 == 1 and n % m == k % m and gcd(m, n) == 1:
            found.append(n)
    return found


def spaced_members(m: int, k: int, count: int = 4) -> List[int]:
    """Family members more than 8m apart, starting after 4m.

    Terms -(n + c)/4m of different members can only collide with each other
    or with a constant term when the members are close together.
    """
    step = m if m % 2 == 0 else 2 * m
    spacing = step * (8 * m // step + 1)
    first = family_members(m, k, count=1)[0]
    return [first + j * spacing for j in range(count)]


def reconstruct(m: int, constants: Sequence[Fraction],
                offsets: Sequence[Fraction], n: int) -> List[Fraction]:
    """The multiset the terms predict at ``n``."""
    return sorted(
        list(constants) + [Fraction(-(n + c), 4 * m) for c in offsets]
    )


def holds_from(m: int, k: int, constants: Sequence[Fraction],
               offsets: Sequence[Fraction],
               n_max: int = HOLDS_CHECK_MAX) -> Optional[int]:
    """Smallest family n from which the terms hold for every n up to n_max."""
    members = [n for n in range(3, n_max + 1, 2)
               if n % m == k % m and gcd(m, n) == 1]
    first = None
    for n in reversed(members):
        if reconstruct(m, constants, offsets, n) != list(_dihedral_multiset(m, n)):
            break
        first = n
    return first


@dataclass
class DihedralTermsRow:
    m: int
    k: int
    n_values: List[int]
    constants: List[Fraction]
    offsets: List[Fraction]
    expected_constants: List[Fraction] = field(default_factory=list)
    expected_offsets: List[int] = field(default_factory=list)
    reconstructed: bool = False
    holds_from: Optional[int] = None
    printed_constants: List[Fraction] = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return (self.reconstructed
                and sorted(set(self.constants)) == self.expected_constants
                and sorted(set(self.offsets)) == self.expected_offsets)

    @property
    def known_discrepancy(self) -> Optional[str]:
        if (self.m, self.k) not in DIHEDRAL_TERMS_ERRATA:
            return None
        printed, value = DIHEDRAL_TERMS_ERRATA[(self.m, self.k)]
        return (f"printed constant {format_rational(printed)} is "
                f"{format_rational(value)} at every n in {self.n_values}")


def dihedral_terms_row(m: int, k: int,
                       n_values: Optional[Sequence[int]] = None,
                       n_max: int = HOLDS_CHECK_MAX) -> DihedralTermsRow:
    """Split the d-invariants of the family into constant and n-linear terms.

    Constants are the multiset common to every member. The remaining values
    are turned into offsets c = -4m d - n, and the offsets common to every
    member are kept. The row is reconstructed at each member to confirm
    nothing was left over.
    """
    n_values = list(n_values or spaced_members(m, k))
    per_n = {n: Counter(_dihedral_multiset(m, n)) for n in n_values}
    constants = reduce(and_, per_n.values())
    offsets = reduce(and_, (
        Counter(-4 * m * v - n for v in (values - constants).elements())
        for n, values in per_n.items()
    ))
    constant_list = sorted(constants.elements())
    offset_list = sorted(offsets.elements())
    reconstructed = all(
        reconstruct(m, constant_list, offset_list, n) == sorted(values.elements())
        for n, values in per_n.items()
    )
    printed, printed_offsets = DIHEDRAL_TERMS_GOLDEN.get((m, k), ([], []))
    expected = list(printed)
    if (m, k) in DIHEDRAL_TERMS_ERRATA:
        wrong, value = DIHEDRAL_TERMS_ERRATA[(m, k)]
        expected = [value if v == wrong else v for v in expected]
    logger.debug(f"Terms for 4m={4 * m}, n={k} mod {m} from n in {n_values}")
    return DihedralTermsRow(
        m=m,
        k=k,
        n_values=n_values,
        constants=constant_list,
        offsets=offset_list,
        expected_constants=sorted(set(expected)),
        expected_offsets=sorted(set(printed_offsets)),
        reconstructed=reconstructed,
        holds_from=(holds_from(m, k, constant_list, offset_list, n_max)
                    if reconstructed else None),
        printed_constants=sorted(set(printed)),
    )


def dihedral_terms_table() -> List[DihedralTermsRow]:
    return [dihedral_terms_row(m, k) for m, k in DIHEDRAL_TERMS_GOLDEN]


@dataclass
class DihedralSurgeryRow:
    name: str
    p: int
    values: List[Fraction]
    n: Optional[int]
    expected_values: List[Fraction]
    expected_n: Optional[int]
    printed_n: int
    known_discrepancy: Optional[str] = None

    @property
    def matches(self) -> bool:
        return self.values == self.expected_values and self.n == self.expected_n


def matching_dihedral_n(p: int, multiset: Sequence[Fraction],
                        n_max: Optional[int] = None) -> Optional[int]:
    """Smallest n with +-(-1; 1/2, 1/2, (p/4)/n) matching ``multiset``.

    Returns -n when Y = S^3_p(K) and n when Y = -S^3_p(K).
    """
    if p % 4:
        return None
    m = p // 4
    target = sorted(multiset)
    negated = sorted(-v for v in multiset)
    for n in range(3, (n_max or 4 * m + 1) + 1, 2):
        if gcd(m, n) != 1:
            continue
        values = sorted(_dihedral_multiset(m, n))
        if values == target:
            return -n
        if values == negated:
            return n
    return None


def dihedral_surgery_table(n_max: Optional[int] = None
                           ) -> List[DihedralSurgeryRow]:
    rows = []
    for name, p, printed_n, expected in DIHEDRAL_SURGERY_GOLDEN:
        result = d_surgery(Slope(p, 1), get_polynomial(name))
        expected_n: Optional[int] = printed_n
        note = None
        if (name, p) in DIHEDRAL_SURGERY_ERRATA:
            expected_n, reason = DIHEDRAL_SURGERY_ERRATA[(name, p)]
            note = f"printed n={printed_n}: {reason}"
        rows.append(DihedralSurgeryRow(
            name=name,
            p=p,
            values=result.row(),
            n=matching_dihedral_n(p, result.multiset, n_max),
            expected_values=expected,
            expected_n=expected_n,
            printed_n=printed_n,
            known_discrepancy=note,
        ))
    return rows


def _fmt(values: Sequence[Fraction]) -> List[str]:
    return [format_rational(v) for v in values]


def offset_text(c: Fraction, m: int) -> str:
    """The n-dependent term -(n + c)/4m."""
    sign = "+" if c >= 0 else "-"
    return f"-(n {sign} {format_rational(abs(Fraction(c)))})/{4 * m}"


@dataclass
class TableEntry:
    """One regenerated row next to its golden copy, as strings."""

    key: str
    values: List[str]
    expected: List[str]
    matches: bool
    note: Optional[str] = None
    known_discrepancy: Optional[str] = None


TABLE_NAMES = ("small-h1", "dihedral-terms", "dihedral-surgeries")


def table_entries(which: str) -> List[TableEntry]:
    """Regenerate table ``which`` as printable entries."""
    entries = []
    if which == "small-h1":
        for r in small_h1_table():
            entries.append(TableEntry(
                key=f"|H1|={r.h1}" + (f", n={r.n}" if r.n else ""),
                values=_fmt(sorted(r.values)),
                expected=_fmt(r.expected),
                matches=r.matches,
            ))
    elif which == "dihedral-terms":
        for r in dihedral_terms_table():
            held = (f", holds from n={r.holds_from}"
                    if r.holds_from is not None else "")
            entries.append(TableEntry(
                key=f"4m={4 * r.m}, n={r.k} mod {r.m}",
                values=_fmt(sorted(set(r.constants)))
                + [offset_text(c, r.m) for c in sorted(set(r.offsets))],
                expected=_fmt(r.expected_constants)
                + [offset_text(c, r.m) for c in r.expected_offsets],
                matches=r.matches,
                note=f"n in {r.n_values}{held}",
                known_discrepancy=r.known_discrepancy,
            ))
    elif which == "dihedral-surgeries":
        for r in dihedral_surgery_table():
            entries.append(TableEntry(
                key=f"D{r.name}, p={r.p}",
                values=_fmt(r.values),
                expected=_fmt(r.expected_values),
                matches=r.matches,
                note=f"n={r.n} (expected {r.expected_n})",
                known_discrepancy=r.known_discrepancy,
            ))
    else:
        raise ValueError(f"Unknown table {which}")
    return entries


def diff_table(which: str,
               entries: Optional[Sequence[TableEntry]] = None) -> List[str]:
    """Human-readable discrepancies between regenerated and golden rows.

    Rows whose golden copy carries a corrected printed value are compared
    against the correction and only mismatch when that fails too.
    """
    if entries is None:
        entries = table_entries(which)
    problems = [
        f"{which} {e.key}: got {', '.join(e.values)}"
        + (f" [{e.note}]" if e.note else "")
        + f", expected {', '.join(e.expected)}"
        for e in entries if not e.matches
    ]
    logger.info(f"{which}: {len(problems)} discrepancies")
    return problems
