"""
Obstruct - Match elliptic manifolds against knot surgeries by d-invariants.

For a target Y with |H1| = p, every L-space surgery S^3_{p/q}(K) with
q in {1, 2} is a candidate; its correction terms depend only on the slope and
the Alexander polynomial of K. A candidate survives when its multiset equals
d(Y) (Y = S^3_{p/q}(K)) or -d(Y) (Y = -S^3_{p/q}(K)). Torus knot surgeries
are found separately through Moser's classification, for every q.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import InternalError, MethodInapplicableError
from .knots import AlexanderPoly, enumerate_lspace_alex, max_genus, torus_alex
from .lattice import DInvariants, d_invariants
from .plumbing import to_plumbing
from .seifert import (
    EllipticType,
    OrientedSeifert,
    SeifertData,
    classify,
    enumerate_elliptic,
    h1_order,
    h1_structure,
    normalize,
    same_manifold,
)
from .surgery import Seifert, Slope, d_lens, d_surgery, moser_classify

logger = logging.getLogger(__name__)

AS_IS = "as-is"
MIRRORED = "mirrored"
BOTH = "both"

NON_CYCLIC = "non-cyclic H1"

# Largest |H1| at which an integral T(5,2) match is taken as the knot itself.
NI_ZHANG_MAX_P = 9


class Verdict(str, Enum):
    NOT_SURGERY = "NotSurgery"
    CANDIDATES_FOUND = "CandidatesFound"


@dataclass(frozen=True)
class Candidate:
    """A surgery whose correction terms match the target.

    ``orientation`` is AS_IS for Y = S^3_{p/q}(K), MIRRORED for
    Y = -S^3_{p/q}(K) and BOTH when d(Y) = -d(Y) lets either one match.
    """

    slope: Slope
    poly: AlexanderPoly
    orientation: str
    torus: Optional[Tuple[int, int]] = None
    determined_by: Optional[str] = None

    @property
    def sort_key(self):
        return (self.slope.value, self.slope.q, self.poly.genus,
                tuple(reversed(self.poly.coeffs)))


@dataclass(frozen=True)
class MatchReport:
    manifold: OrientedSeifert
    h1: int
    type: EllipticType
    target_d: DInvariants = field(hash=False)
    candidates: Tuple[Candidate, ...]
    excluded: Optional[str] = None

    @property
    def verdict(self) -> Verdict:
        return Verdict.CANDIDATES_FOUND if self.candidates else Verdict.NOT_SURGERY

    @property
    def unique(self) -> bool:
        """Every candidate is a torus knot surgery with the knot pinned down."""
        return bool(self.candidates) and all(
            c.torus is not None and c.determined_by is not None
            for c in self.candidates
        )


def candidates(p: int) -> List[Tuple[Slope, AlexanderPoly]]:
    """(p/q, poly) with q in {1, 2} coprime to p and genus within the slope bound."""
    if p < 1:
        raise MethodInapplicableError(f"candidates needs p >= 1, got {p}")
    result = []
    for q in (1, 2):
        if gcd(p, q) != 1:
            continue
        slope = Slope(p, q)
        g_max = max_genus(slope)
        if g_max < 1:
            continue
        result.extend((slope, poly) for poly in enumerate_lspace_alex(g_max))
    return result


def _knot_shifts(p: int, q: int) -> Tuple[int, ...]:
    """c(i) for i in [0, p): the index of V_c that shifts structure i."""
    return tuple(min(i // q, (p + q - 1 - i) // q) for i in range(p))


class _CandidateTable:
    """Candidate multisets for one p, keyed by the sorted scaled values."""

    def __init__(self, p: int):
        pairs = candidates(p)
        lens: Dict[Slope, Tuple[Fraction, ...]] = {}
        for slope, _ in pairs:
            if slope not in lens:
                reduced_q = slope.q % p if p > 1 else 0
                lens[slope] = tuple(d_lens(p, reduced_q, i) for i in range(p))
        self.scale = 1
        for values in lens.values():
            for value in values:
                self.scale = self.scale * value.denominator // gcd(
                    self.scale, value.denominator
                )
        scaled = {
            slope: [int(v * self.scale) for v in values]
            for slope, values in lens.items()
        }
        shifts = {slope: _knot_shifts(p, slope.q) for slope in lens}
        self.entries: Dict[Tuple[int, ...], List[Tuple[Slope, AlexanderPoly]]] = {}
        for slope, poly in pairs:
            torsions = poly.torsions()
            key = tuple(sorted(
                base - 2 * self.scale * (torsions[c] if c < len(torsions) else 0)
                for base, c in zip(scaled[slope], shifts[slope])
            ))
            self.entries.setdefault(key, []).append((slope, poly))
        logger.debug(
            f"candidate table p={p}: {len(pairs)} pairs, "
            f"{len(self.entries)} distinct multisets"
        )

    def lookup(self, values: Sequence[Fraction]) -> List[Tuple[Slope, AlexanderPoly]]:
        scaled = [v * self.scale for v in values]
        if any(v.denominator != 1 for v in scaled):
            return []
        return list(self.entries.get(tuple(sorted(int(v) for v in scaled)), []))


@lru_cache(maxsize=None)
def _candidate_table(p: int) -> _CandidateTable:
    return _CandidateTable(p)


def _determined_by(slope: Slope, poly: AlexanderPoly) -> Optional[str]:
    if slope.q >= 3:
        return "boyer-zhang-nonintegral"
    if poly.genus == 1:
        return "ghiggini-genus-one"
    if poly == torus_alex(5, 2) and slope.p <= NI_ZHANG_MAX_P:
        return "ni-zhang-T52"
    return None


def torus_realizations(data: SeifertData) -> List[Tuple[int, int, Slope, str]]:
    """Torus knot surgeries giving ``data`` up to orientation, via Moser.

    Each entry is (r, s, slope, orientation) with the orientation relative to
    ``data``.
    """
    p = h1_order(data)
    mults = list(normalize(data).data.multiplicities)
    found = []
    seen: Set[Tuple[int, int, Slope]] = set()
    for index, k in enumerate(mults):
        pair = sorted(mults[:index] + mults[index + 1:], reverse=True)
        r, s = pair
        if not (r > s >= 2 and gcd(r, s) == 1):
            continue
        for total in (p - k, p + k):
            if total <= 0 or total % (r * s):
                continue
            q = total // (r * s)
            if gcd(p, q) != 1 or (r, s, Slope(p, q)) in seen:
                continue
            slope = Slope(p, q)
            seen.add((r, s, slope))
            result = moser_classify(r, s, slope)
            if not isinstance(result, Seifert):
                continue
            if classify(result.data) in (EllipticType.LENS, EllipticType.NOT_ELLIPTIC):
                continue
            relation = same_manifold(result.data, data)
            if relation is None:
                continue
            found.append((r, s, slope, AS_IS if relation else MIRRORED))
    return found


def _orientation(key: Tuple[Slope, AlexanderPoly], tags: List[str]) -> str:
    if len(tags) == 1:
        return tags[0]
    logger.debug(f"{key[0]} {key[1].to_text()} matches in both orientations")
    return BOTH


def match_manifold(data: SeifertData) -> MatchReport:
    """Compare d(data) with every candidate surgery in both orientations.

    Manifolds with non-cyclic H1 are reported as excluded: H1 of a surgery on
    a knot in S^3 is cyclic.
    """
    manifold = normalize(data)
    kind = classify(manifold.data)
    p = h1_order(manifold.data)
    target = d_invariants(to_plumbing(data))
    structure = h1_structure(manifold.data)
    if len(structure) > 1:
        logger.debug(f"match_manifold {manifold}: excluded, H1 = {structure}")
        return MatchReport(manifold, p, kind, target, (), NON_CYCLIC)
    values = list(target.multiset)
    negated = [-v for v in values]

    table = _candidate_table(p)
    orientations: Dict[Tuple[Slope, AlexanderPoly], List[str]] = {}
    for slope, poly in table.lookup(values):
        orientations.setdefault((slope, poly), []).append(AS_IS)
    for slope, poly in table.lookup(negated):
        orientations.setdefault((slope, poly), []).append(MIRRORED)

    found: Dict[Tuple[Slope, AlexanderPoly], Candidate] = {
        key: Candidate(
            key[0], key[1], _orientation(key, tags), None, _determined_by(*key)
        )
        for key, tags in orientations.items()
    }

    for r, s, slope, orientation in torus_realizations(data):
        poly = torus_alex(r, s)
        key = (slope, poly)
        if slope.q in (1, 2):
            if orientation not in orientations.get(key, []):
                raise InternalError(
                    f"T({r},{s}) surgery {slope} gives {data} but fails the "
                    f"d-invariant comparison"
                )
            orientation = found[key].orientation
        else:
            expected = values if orientation == AS_IS else negated
            if list(d_surgery(slope, poly).multiset) != sorted(expected):
                raise InternalError(
                    f"T({r},{s}) surgery {slope} gives {data} but its "
                    f"d-invariants differ"
                )
        found[key] = Candidate(
            slope, poly, orientation, (r, s), _determined_by(slope, poly)
        )

    ordered = tuple(sorted(found.values(), key=lambda c: c.sort_key))
    report = MatchReport(manifold, p, kind, target, ordered)
    logger.debug(
        f"match_manifold {manifold}: {report.verdict.value}, "
        f"{len(ordered)} candidates"
    )
    return report


def run_classification(
    h1_bound: int,
    n_bound: int = 101,
    types: Optional[Sequence[EllipticType]] = None,
    workers: int = 1,
    include_even_dihedral: bool = True,
) -> List[MatchReport]:
    """Match every enumerated elliptic manifold; order follows the enumeration."""
    manifolds = [
        m.data for m in enumerate_elliptic(
            h1_bound, n_bound, types, include_even_dihedral
        )
    ]
    logger.info(f"Classifying {len(manifolds)} manifolds with {workers} workers")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            reports = list(executor.map(match_manifold, manifolds, chunksize=4))
    else:
        reports = [match_manifold(m) for m in manifolds]
    return reports


@dataclass
class ClassificationSummary:
    unique: List[MatchReport] = field(default_factory=list)
    candidate_only: List[MatchReport] = field(default_factory=list)
    not_surgery: List[MatchReport] = field(default_factory=list)


def summarize(reports: Sequence[MatchReport]) -> ClassificationSummary:
    summary = ClassificationSummary()
    for report in reports:
        if not report.candidates:
            summary.not_surgery.append(report)
        elif report.unique:
            summary.unique.append(report)
        else:
            summary.candidate_only.append(report)
    return summary


def dihedral_parameters(report: MatchReport) -> Tuple[int, int]:
    """(m, n) of a canonical (-1; 1/2, 1/2, m/n)."""
    if report.type is not EllipticType.D:
        raise MethodInapplicableError(f"{report.manifold} is not dihedral")
    return report.manifold.data.coeffs[2]


@dataclass(frozen=True)
class ConjectureRow:
    m: int
    largest_n: Optional[int]
    holds: bool


def conjecture_scan(reports: Sequence[MatchReport], m_max: int = 8
                    ) -> List[ConjectureRow]:
    """Per dihedral m <= m_max: the largest candidate-bearing n, and whether
    every candidate-bearing n satisfies n <= 2m + 1 in the scanned range."""
    bearing: Dict[int, List[int]] = {m: [] for m in range(1, m_max + 1)}
    for report in reports:
        if report.type is not EllipticType.D or not report.candidates:
            continue
        m, n = dihedral_parameters(report)
        if m <= m_max:
            bearing[m].append(n)
    return [
        ConjectureRow(
            m=m,
            largest_n=max(ns) if ns else None,
            holds=all(n <= 2 * m + 1 for n in ns),
        )
        for m, ns in bearing.items()
    ]
