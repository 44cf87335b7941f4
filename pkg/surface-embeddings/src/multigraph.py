"""Loopless-by-default multigraphs with darts, neighborhoods and canonical codes."""

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .errors import DuplicateLabel, LoopForbidden, TooLarge, UnknownEndpoint, UnknownVertex

logger = logging.getLogger(__name__)

DEFAULT_CANONICAL_CAP = 10


@dataclass(frozen=True, order=True)
class Dart:
    """One end of an edge. ``end`` is 0 or 1."""

    edge: int
    end: int

    def partner(self) -> "Dart":
        return Dart(self.edge, 1 - self.end)

    def to_json(self) -> list[int]:
        return [self.edge, self.end]


class Multigraph:
    """Immutable multigraph over dense vertex ids ``0..n-1`` and edge ids ``0..m-1``.

    User-facing labels are preserved alongside the dense ids. A loop contributes
    both of its darts (and 2 to the degree) at its vertex.
    """

    __slots__ = ("labels", "ends", "loops_allowed", "_index", "_darts", "_mult")

    def __init__(
        self,
        labels: Sequence[str],
        ends: Sequence[tuple[int, int]],
        loops_allowed: bool = False,
    ):
        self.labels: tuple[str, ...] = tuple(labels)
        self.ends: tuple[tuple[int, int], ...] = tuple((int(u), int(w)) for u, w in ends)
        self.loops_allowed = loops_allowed
        self._index = {label: i for i, label in enumerate(self.labels)}

        darts: list[list[Dart]] = [[] for _ in self.labels]
        mult: Counter = Counter()
        for e, (u, w) in enumerate(self.ends):
            darts[u].append(Dart(e, 0))
            darts[w].append(Dart(e, 1))
            mult[(min(u, w), max(u, w))] += 1
        self._darts = tuple(tuple(sorted(ds)) for ds in darts)
        self._mult = mult

    # Basic accessors

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.ends)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def index(self, label: str) -> int:
        """Return the dense id of a vertex label."""
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertex(f"Unknown vertex label: {label!r}") from None

    def label(self, v: int) -> str:
        self.check_vertex(v)
        return self.labels[v]

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise UnknownVertex(f"Unknown vertex id: {v!r}")

    def darts_at(self, v: int) -> tuple[Dart, ...]:
        """Darts attached to ``v`` in increasing (edge, end) order."""
        self.check_vertex(v)
        return self._darts[v]

    def vertex_of(self, d: Dart) -> int:
        return self.ends[d.edge][d.end]

    def far_end(self, d: Dart) -> int:
        return self.ends[d.edge][1 - d.end]

    def degree(self, v: int) -> int:
        return len(self.darts_at(v))

    def multiplicity(self, u: int, w: int) -> int:
        return self._mult.get((min(u, w), max(u, w)), 0)

    def adjacent(self, u: int, w: int) -> bool:
        return u != w and self.multiplicity(u, w) > 0

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbors of ``v`` (``v`` itself excluded)."""
        return sorted({self.far_end(d) for d in self.darts_at(v)} - {v})

    def loop_count(self, v: int) -> int:
        return self.multiplicity(v, v)

    @property
    def has_loops(self) -> bool:
        return any(u == w for u, w in self.ends)

    @property
    def is_simple(self) -> bool:
        return all(is_simple_vertex(self, v) for v in self.vertices)

    def degree_sum(self) -> int:
        return sum(len(ds) for ds in self._darts)

    # Derived graphs

    def with_extra_edge(self, e: int) -> "Multigraph":
        """Copy of the graph with edge ``e`` duplicated (new id ``m``)."""
        return Multigraph(self.labels, [*self.ends, self.ends[e]], self.loops_allowed)

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for e, (u, w) in enumerate(self.ends):
            graph.add_edge(u, w, key=e)
        return graph

    def edge_pairs(self) -> list[tuple[str, str]]:
        return [(self.labels[u], self.labels[w]) for u, w in self.ends]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (self.labels, self.ends, self.loops_allowed) == (
            other.labels,
            other.ends,
            other.loops_allowed,
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.ends, self.loops_allowed))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m}, loops_allowed={self.loops_allowed})"


def build_graph(
    labels: Iterable[str],
    edge_list: Iterable[tuple[str, str]],
    loops_allowed: bool = False,
) -> Multigraph:
    """Validate labels and label pairs and build a Multigraph with dense ids.

    Raises:
        DuplicateLabel: a label occurs twice
        UnknownEndpoint: an edge names a label that is not a vertex
        LoopForbidden: a loop pair while ``loops_allowed`` is false
    """
    labels = [str(label) for label in labels]
    index: dict[str, int] = {}
    for i, label in enumerate(labels):
        if label in index:
            raise DuplicateLabel(f"Duplicate vertex label: {label!r}")
        index[label] = i

    ends = []
    for e, pair in enumerate(edge_list):
        a, b = (str(x) for x in pair)
        for endpoint in (a, b):
            if endpoint not in index:
                raise UnknownEndpoint(f"Edge {e} has unknown endpoint {endpoint!r}")
        if a == b and not loops_allowed:
            raise LoopForbidden(f"Edge {e} is a loop at {a!r} but loops are not allowed")
        ends.append((index[a], index[b]))

    graph = Multigraph(labels, ends, loops_allowed)
    assert graph.degree_sum() == 2 * graph.m
    return graph


def is_simple_vertex(g: Multigraph, v: int) -> bool:
    """True iff no two edges at ``v`` share an endpoint pair; a loop makes ``v`` non-simple."""
    g.check_vertex(v)
    seen: set[int] = set()
    for d in g.darts_at(v):
        w = g.far_end(d)
        if w == v or w in seen:
            return False
        seen.add(w)
    return True


def induced_neighborhood(g: Multigraph, v: int) -> Multigraph:
    """Subgraph induced on the distinct neighbors of ``v``, multiplicities retained."""
    g.check_vertex(v)
    members = g.neighbors(v)
    position = {w: i for i, w in enumerate(members)}
    ends = [
        (position[a], position[b])
        for a, b in g.ends
        if a in position and b in position
    ]
    return Multigraph([g.labels[w] for w in members], ends, g.loops_allowed)


def is_connected(g: Multigraph) -> bool:
    """Connectivity of the underlying simple graph; the empty graph counts as connected."""
    if g.n == 0:
        return True
    return nx.is_connected(nx.Graph(g.to_networkx()))


def adjacency_matrix(g: Multigraph) -> np.ndarray:
    """Symmetric multiplicity matrix; the diagonal holds loop counts."""
    matrix = np.zeros((g.n, g.n), dtype=np.uint8)
    for u, w in g.ends:
        matrix[u, w] += 1
        if u != w:
            matrix[w, u] += 1
    return matrix


def _vertex_invariant(g: Multigraph, matrix: np.ndarray, v: int) -> tuple:
    degrees = [g.degree(w) for w in g.vertices]
    neighbor_profile = sorted(
        (degrees[w], int(matrix[v, w])) for w in g.vertices if w != v and matrix[v, w]
    )
    return (g.degree(v), int(matrix[v, v]), tuple(neighbor_profile))


def canonical_form(g: Multigraph, max_vertices: int = DEFAULT_CANONICAL_CAP) -> tuple[bytes, list[int]]:
    """Return the canonical code and the vertex order realizing it.

    The code is the least row-major adjacency-multiplicity matrix over all vertex
    orders that list vertices class by class, classes being sorted by a
    permutation-invariant vertex signature.

    Raises:
        TooLarge: more than ``max_vertices`` vertices
    """
    if g.n > max_vertices:
        raise TooLarge(f"Canonical form limited to {max_vertices} vertices, got {g.n}")

    header = bytes([g.n])
    if g.n == 0:
        return header, []

    matrix = adjacency_matrix(g)
    classes: dict[tuple, list[int]] = {}
    for v in g.vertices:
        classes.setdefault(_vertex_invariant(g, matrix, v), []).append(v)
    ordered_classes = [classes[key] for key in sorted(classes)]

    best_code: bytes | None = None
    best_order: list[int] = list(g.vertices)
    for parts in itertools.product(*(itertools.permutations(c) for c in ordered_classes)):
        order = [v for part in parts for v in part]
        code = matrix[np.ix_(order, order)].tobytes()
        if best_code is None or code < best_code:
            best_code = code
            best_order = order

    return header + (best_code or b""), best_order


def canonical_code(g: Multigraph, max_vertices: int = DEFAULT_CANONICAL_CAP) -> bytes:
    """Isomorphism-invariant code: equal codes iff the multigraphs are isomorphic."""
    return canonical_form(g, max_vertices)[0]


def graph_from_matrix(matrix: np.ndarray, loops_allowed: bool = False) -> Multigraph:
    """Build a multigraph labelled ``"0".."n-1"`` with edges in (row, column) order."""
    n = matrix.shape[0]
    ends = []
    for u in range(n):
        for w in range(u, n):
            ends.extend([(u, w)] * int(matrix[u, w]))
    return Multigraph([str(i) for i in range(n)], ends, loops_allowed)


def canonical_representative(g: Multigraph, max_vertices: int = DEFAULT_CANONICAL_CAP) -> Multigraph:
    """The graph rebuilt from its canonical matrix (same for every isomorphic copy)."""
    _, order = canonical_form(g, max_vertices)
    if not order:
        return Multigraph([], [], g.loops_allowed)
    matrix = adjacency_matrix(g)[np.ix_(order, order)]
    return graph_from_matrix(matrix, g.loops_allowed)
