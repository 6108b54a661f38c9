"""
Lattice - Characteristic vectors on a plumbing lattice and the d-invariants of
the boundary three-manifold.

Characteristic vectors are stored in Hom-dual form: coordinate i of V is
<V, v_i>, which has the parity of the weight m(v_i). The path operation
V -> V + 2PD(v_i) applies when <V, v_i> = -m(v_i); it preserves both the
Spin^c class and the square V^2 = V Q^{-1} V^T.

For graphs with at most one bad vertex the maximum of (V^2 + |G|)/4 over a
Spin^c class is attained at the first vector of a full path of nice vectors,
so only those starts are enumerated.
"""

import itertools
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import InternalError, MethodInapplicableError
from .exactmath import FormData, form_data
from .plumbing import PlumbingGraph, PlumbingResult, bad_vertex_count

logger = logging.getLogger(__name__)

CharVector = Tuple[int, ...]
SpincKey = Tuple[int, ...]

# d(Y(G)) = CALIBRATION_SIGN * -max (V^2 + |G|)/4. Fixed by
# d(S^3_1(T_{3,2})) = -2 = d((-1; 1/2, 1/3, 1/5)): the plumbing boundary
# is the reversed Poincare sphere and gets +2.
CALIBRATION_SIGN = -1

DEFAULT_ORACLE_LIMIT = 2 ** 16
_MAX_TOPPLES = 10 ** 7


@dataclass(frozen=True)
class SpincClass:
    """A Spin^c structure: deterministic id, class key and a representative."""

    id: int
    key: SpincKey
    representative: CharVector


@dataclass(frozen=True)
class DInvariants:
    """Correction terms, one per Spin^c class."""

    classes: Tuple[SpincClass, ...]
    values: Dict[SpincKey, Fraction] = field(hash=False)
    modulus: int

    @property
    def multiset(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(self.values.values()))

    def by_id(self) -> Dict[int, Fraction]:
        return {c.id: self.values[c.key] for c in self.classes}

    def negated(self) -> "DInvariants":
        return DInvariants(
            classes=self.classes,
            values={k: -v for k, v in self.values.items()},
            modulus=self.modulus,
        )

    def conjugate_key(self, key: SpincKey) -> SpincKey:
        return tuple((-k) % self.modulus for k in key)

    def is_conjugation_symmetric(self) -> bool:
        return all(
            self.values.get(self.conjugate_key(k)) == v
            for k, v in self.values.items()
        )

    def __len__(self) -> int:
        return len(self.values)


def is_characteristic(vector: Sequence[int], graph: PlumbingGraph) -> bool:
    return len(vector) == graph.size and all(
        (v - w) % 2 == 0 for v, w in zip(vector, graph.weights)
    )


def is_nice(vector: Sequence[int], graph: PlumbingGraph) -> bool:
    """m(v_i) <= <V, v_i> <= -m(v_i) for every i."""
    return all(w <= v <= -w for v, w in zip(vector, graph.weights))


def in_start_box(vector: Sequence[int], graph: PlumbingGraph) -> bool:
    """m(v_i) < <V, v_i> <= -m(v_i) for every i."""
    return all(w < v <= -w for v, w in zip(vector, graph.weights))


def in_end_box(vector: Sequence[int], graph: PlumbingGraph) -> bool:
    """m(v_i) <= <V, v_i> < -m(v_i) for every i."""
    return all(w <= v < -w for v, w in zip(vector, graph.weights))


def step(vector: Sequence[int], index: int, graph: PlumbingGraph,
         neighbors: Optional[Tuple[Tuple[int, ...], ...]] = None) -> CharVector:
    """V -> V + 2PD(v_i), defined when <V, v_i> = -m(v_i)."""
    weight = graph.weights[index]
    if vector[index] != -weight:
        raise MethodInapplicableError(
            f"step not applicable: coordinate {index} is {vector[index]}, "
            f"needs {-weight}"
        )
    result = list(vector)
    result[index] = weight
    for j in (neighbors or graph.neighbors())[index]:
        result[j] += 2
    return tuple(result)


def applicable(vector: Sequence[int], graph: PlumbingGraph) -> List[int]:
    return [i for i, (v, w) in enumerate(zip(vector, graph.weights)) if v == -w]


def square(vector: Sequence[int], form: FormData) -> Fraction:
    """V^2 = (v^T Q) Q^{-1} (v^T Q)^T."""
    return form.quadratic(vector)


def spinc_key(vector: Sequence[int], form: FormData) -> SpincKey:
    """Canonical class label: Q^{-1} V / 2 modulo integers.

    Stored as the numerators of adj(Q) V reduced mod 2|det Q|.
    """
    modulus = 2 * abs(form.determinant)
    sign = 1 if form.determinant > 0 else -1
    return tuple(
        (sign * sum(a * v for a, v in zip(row, vector) if v)) % modulus
        for row in form.adjugate
    )


def same_class(first: Sequence[int], second: Sequence[int], form: FormData) -> bool:
    return spinc_key(first, form) == spinc_key(second, form)


def descend(vector: Sequence[int], graph: PlumbingGraph,
            policy: str = "lowest") -> Tuple[List[CharVector], bool]:
    """Follow a full path from ``vector``.

    Returns the path and whether every vector on it was nice. The path stops
    at the first vector that leaves the nice box.
    """
    if policy not in ("lowest", "highest"):
        raise ValueError(f"Unknown tie-break policy: {policy}")
    neighbors = graph.neighbors()
    current = tuple(vector)
    path = [current]
    for _ in range(_MAX_TOPPLES):
        if not is_nice(current, graph):
            return path, False
        ready = applicable(current, graph)
        if not ready:
            return path, True
        index = ready[0] if policy == "lowest" else ready[-1]
        current = step(current, index, graph, neighbors)
        path.append(current)
    raise InternalError("Path did not terminate")


def _check_bad_vertices(graph: PlumbingGraph) -> None:
    bad = bad_vertex_count(graph)
    if bad >= 2:
        raise MethodInapplicableError(
            f"algorithm inapplicable: graph has {bad} bad vertices"
        )


def nice_full_path_starts(graph: PlumbingGraph) -> List[CharVector]:
    """All starts of full paths made of nice vectors.

    Works in chip coordinates c_i = (<V, v_i> - m(v_i))/2 with threshold
    t_i = -m(v_i); a start has 1 <= c_i <= t_i and a step empties vertex i
    and passes one chip to each neighbor. Coordinates are assigned in vertex
    order while the path runs on the assigned part; chips sent to unassigned
    vertices wait as pending. Any order of steps is a path, so a prefix whose
    partial path already leaves the nice box can be discarded.
    """
    _check_bad_vertices(graph)
    n = graph.size
    neighbors = graph.neighbors()
    threshold = [-w for w in graph.weights]
    starts: List[CharVector] = []

    def settle(chips: List[int], pending: List[int], assigned: int,
               queue: List[int]) -> bool:
        topples = 0
        while queue:
            v = queue.pop()
            topples += 1
            if topples > _MAX_TOPPLES:
                raise InternalError("Chip firing did not terminate")
            chips[v] = 0
            for u in neighbors[v]:
                if u < assigned:
                    chips[u] += 1
                    if chips[u] > threshold[u]:
                        return False
                    if chips[u] == threshold[u]:
                        queue.append(u)
                else:
                    pending[u] += 1
                    if pending[u] >= threshold[u]:
                        return False
        return True

    def search(index: int, chips: List[int], pending: List[int],
               initial: List[int]) -> None:
        if index == n:
            starts.append(
                tuple(w + 2 * c for w, c in zip(graph.weights, initial))
            )
            return
        for value in range(1, threshold[index] + 1):
            total = value + pending[index]
            if total > threshold[index]:
                break
            next_chips = chips + [total]
            next_pending = list(pending)
            next_pending[index] = 0
            queue = [index] if total == threshold[index] else []
            if settle(next_chips, next_pending, index + 1, queue):
                search(index + 1, next_chips, next_pending, initial + [value])

    search(0, [], [0] * n, [])
    starts.sort()

    for start in starts:
        path, nice = descend(start, graph, "lowest")
        if not nice or not in_end_box(path[-1], graph):
            raise InternalError(f"Start {start} failed greedy verification")
    logger.debug(f"nice_full_path_starts: {len(starts)} starts on {n} vertices")
    return starts


def _classes_from(vectors: Sequence[CharVector], form: FormData
                  ) -> Dict[SpincKey, List[CharVector]]:
    grouped: Dict[SpincKey, List[CharVector]] = {}
    for vector in vectors:
        grouped.setdefault(spinc_key(vector, form), []).append(vector)
    return grouped


def _number_classes(grouped: Dict[SpincKey, List[CharVector]]
                    ) -> Tuple[SpincClass, ...]:
    ordered = sorted(grouped.items(), key=lambda item: min(item[1]))
    return tuple(
        SpincClass(id=i, key=key, representative=min(vectors))
        for i, (key, vectors) in enumerate(ordered)
    )


def spinc_partition(graph: PlumbingGraph, form: Optional[FormData] = None
                    ) -> Tuple[SpincClass, ...]:
    """Split the nice full-path starts into exactly |det Q| classes."""
    form = form or form_data(graph.intersection_form())
    grouped = _classes_from(nice_full_path_starts(graph), form)
    classes = _number_classes(grouped)
    if len(classes) != abs(form.determinant):
        raise InternalError(
            f"Found {len(classes)} Spin^c classes, expected |det Q| = "
            f"{abs(form.determinant)}"
        )
    return classes


def _calibrate(best: Fraction, size: int, reversed_: bool) -> Fraction:
    value = CALIBRATION_SIGN * (-(best + size) / 4)
    return -value if reversed_ else value


def _d_from_groups(grouped: Dict[SpincKey, List[CharVector]], graph: PlumbingGraph,
                   form: FormData, reversed_: bool) -> DInvariants:
    classes = _number_classes(grouped)
    values = {}
    for spinc in classes:
        best = max(square(v, form) for v in grouped[spinc.key])
        values[spinc.key] = _calibrate(best, graph.size, reversed_)
    return DInvariants(
        classes=classes, values=values, modulus=2 * abs(form.determinant)
    )


def d_plumbing(graph: PlumbingGraph, form: Optional[FormData] = None,
               reversed: bool = False) -> DInvariants:
    """d-invariants from the nice full-path starts, one per Spin^c class.

    ``reversed`` composes the Seifert orientation flag: values are reported
    for -Y(G) when set.
    """
    form = form or form_data(graph.intersection_form())
    if not form.is_negative_definite():
        raise MethodInapplicableError("d_plumbing needs a negative-definite form")
    grouped = _classes_from(nice_full_path_starts(graph), form)
    if len(grouped) != abs(form.determinant):
        raise InternalError(
            f"Only {len(grouped)} of {abs(form.determinant)} Spin^c classes "
            f"have a nice full path"
        )
    result = _d_from_groups(grouped, graph, form, reversed)
    logger.debug(f"d_plumbing: {[str(v) for v in result.multiset]}")
    return result


def char_box(graph: PlumbingGraph, kind: str = "start") -> Iterator[CharVector]:
    """Characteristic vectors in the start box or the nice box."""
    if kind == "start":
        ranges = [range(w + 2, -w + 1, 2) for w in graph.weights]
    elif kind == "nice":
        ranges = [range(w, -w + 1, 2) for w in graph.weights]
    else:
        raise ValueError(f"Unknown box kind: {kind}")
    return itertools.product(*ranges)


def box_size(graph: PlumbingGraph, kind: str = "start") -> int:
    offset = 0 if kind == "start" else 1
    size = 1
    for w in graph.weights:
        size *= max(0, -w + offset)
    return size


def d_bruteforce(graph: PlumbingGraph, form: Optional[FormData] = None,
                 reversed: bool = False, kind: str = "nice",
                 limit: Optional[int] = None) -> DInvariants:
    """Independent oracle: maximize V^2 per class over the whole nice box.

    No path logic is used. ``kind="start"`` scans the smaller start box.
    """
    if limit is None:
        limit = int(os.getenv("HF_SURGERY_ORACLE_LIMIT", DEFAULT_ORACLE_LIMIT))
    form = form or form_data(graph.intersection_form())
    _check_bad_vertices(graph)
    size = box_size(graph, kind)
    if size > limit:
        raise MethodInapplicableError(
            f"oracle too large: {size} vectors exceeds limit {limit}"
        )
    best: Dict[SpincKey, Fraction] = {}
    members: Dict[SpincKey, List[CharVector]] = {}
    for vector in char_box(graph, kind):
        key = spinc_key(vector, form)
        value = square(vector, form)
        if key not in best or value > best[key]:
            best[key] = value
            members[key] = [vector]
        elif value == best[key]:
            members[key].append(vector)
    if len(best) != abs(form.determinant):
        raise InternalError(
            f"Oracle box covers {len(best)} of {abs(form.determinant)} classes"
        )
    return _d_from_groups(members, graph, form, reversed)


def d_invariants(result: PlumbingResult) -> DInvariants:
    """d-invariants of the manifold that produced ``result``."""
    return d_plumbing(result.graph, result.form, result.reversed)
