"""
Plumbing - Star-shaped negative-definite plumbing graphs for Seifert data.

Vertex order is fixed: the central vertex first, then each arm in the input
fiber order, root to tip. Arm weights come from the continued fraction of
-bi/ai with every entry <= -2.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

from .errors import InternalError, InvalidInputError, MethodInapplicableError
from .exactmath import FormData, eval_neg_cont_frac, form_data, neg_cont_frac
from .seifert import (
    OrientedSeifert,
    SeifertData,
    euler_number as seifert_euler,
    reduce_fractions,
    reverse_orientation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted tree with star metadata."""

    weights: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    central: int = 0
    arms: Tuple[Tuple[int, ...], ...] = ()

    @property
    def size(self) -> int:
        return len(self.weights)

    def neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        adjacency: List[List[int]] = [[] for _ in self.weights]
        for i, j in self.edges:
            adjacency[i].append(j)
            adjacency[j].append(i)
        return tuple(tuple(sorted(a)) for a in adjacency)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors())

    def intersection_form(self) -> Tuple[Tuple[int, ...], ...]:
        n = self.size
        rows = [[0] * n for _ in range(n)]
        for i, w in enumerate(self.weights):
            rows[i][i] = w
        for i, j in self.edges:
            rows[i][j] = rows[j][i] = 1
        return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class PlumbingResult:
    """Graph, form and orientation flag.

    ``reversed`` is True when the graph's boundary Y(G) is the oppositely
    oriented copy of the manifold that was passed in.
    """

    graph: PlumbingGraph
    form: FormData
    reversed: bool


def star_graph(central_weight: int, arms: Sequence[Sequence[int]]) -> PlumbingGraph:
    """Central vertex plus linear arms given root to tip."""
    weights = [central_weight]
    edges: List[Tuple[int, int]] = []
    arm_indices = []
    for arm in arms:
        indices = []
        previous = 0
        for w in arm:
            index = len(weights)
            weights.append(w)
            edges.append((previous, index))
            indices.append(index)
            previous = index
        arm_indices.append(tuple(indices))
    return PlumbingGraph(
        weights=tuple(weights),
        edges=tuple(edges),
        central=0,
        arms=tuple(arm_indices),
    )


def linear_plumbing(p: int, q: int) -> PlumbingGraph:
    """Chain with weights from the expansion of -p/q (a lens space)."""
    if not 0 < q < p:
        raise InvalidInputError(f"Linear plumbing needs 0 < q < p, got {p}/{q}")
    weights = neg_cont_frac(Fraction(-p, q))
    return star_graph(weights[0], [weights[1:]] if len(weights) > 1 else [])


def to_plumbing(manifold: Union[SeifertData, OrientedSeifert]) -> PlumbingResult:
    """Negative-definite star graph whose boundary is +/- the manifold."""
    if isinstance(manifold, OrientedSeifert):
        data, flipped = manifold.data, manifold.reversed
    else:
        data, flipped = manifold, False

    reduced = reduce_fractions(data)
    if len(reduced.coeffs) != 3:
        raise MethodInapplicableError(
            f"Plumbing expects three exceptional fibers, got {data}"
        )
    if seifert_euler(reduced) > 0:
        reduced = reverse_orientation(data)
        flipped = not flipped
    elif seifert_euler(reduced) == 0:
        raise MethodInapplicableError(
            f"{data} has Euler number 0; not a rational homology sphere"
        )

    arms = [neg_cont_frac(Fraction(-m, a)) for a, m in reduced.coeffs]
    graph = star_graph(reduced.b, arms)
    form = form_data(graph.intersection_form())
    if not form.is_negative_definite():
        raise InternalError(
            f"Plumbing of {data} is not negative definite (weights "
            f"{graph.weights}); conversion bug"
        )
    logger.debug(
        f"to_plumbing: {data} -> {graph.size} vertices, det={form.determinant}, "
        f"reversed={flipped}"
    )
    return PlumbingResult(graph=graph, form=form, reversed=flipped)


def bad_vertex_count(graph: PlumbingGraph) -> int:
    """Vertices with m(v) > -deg(v)."""
    return sum(
        1 for w, d in zip(graph.weights, graph.degrees()) if w > -d
    )


def euler_number(graph: PlumbingGraph) -> Fraction:
    """Orbifold Euler number m(center) + sum over arms of -1/[arm]."""
    total = Fraction(graph.weights[graph.central])
    for arm in graph.arms:
        total -= 1 / eval_neg_cont_frac([graph.weights[i] for i in arm])
    return total


def graph_to_json(graph: PlumbingGraph) -> str:
    return json.dumps(
        {"weights": list(graph.weights), "edges": [list(e) for e in graph.edges]}
    )


def graph_from_json(text: str) -> PlumbingGraph:
    """Read {"weights": [...], "edges": [[i, j], ...]}; must be a star tree."""
    try:
        payload = json.loads(text)
        weights = tuple(int(w) for w in payload["weights"])
        edges = tuple((int(i), int(j)) for i, j in payload["edges"])
    except (ValueError, KeyError, TypeError) as e:
        raise InvalidInputError(f"Invalid plumbing JSON: {e}") from e

    n = len(weights)
    if n == 0 or len(edges) != n - 1:
        raise InvalidInputError("Plumbing graph must be a non-empty tree")
    adjacency: Dict[int, List[int]] = {i: [] for i in range(n)}
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise InvalidInputError(f"Bad edge ({i}, {j})")
        adjacency[i].append(j)
        adjacency[j].append(i)

    branch = [v for v in range(n) if len(adjacency[v]) >= 3]
    if len(branch) > 1:
        raise MethodInapplicableError(
            "Only star-shaped graphs (one branch vertex) are supported"
        )
    central = branch[0] if branch else 0

    seen = {central}
    arms = []
    for root in sorted(adjacency[central]):
        arm, previous, current = [], central, root
        while True:
            if current in seen:
                raise InvalidInputError("Plumbing graph contains a cycle")
            seen.add(current)
            arm.append(current)
            nxt = [v for v in adjacency[current] if v != previous]
            if not nxt:
                break
            previous, current = current, nxt[0]
        arms.append(tuple(arm))
    if len(seen) != n:
        raise InvalidInputError("Plumbing graph is not connected")
    return PlumbingGraph(weights=weights, edges=edges, central=central,
                         arms=tuple(arms))
