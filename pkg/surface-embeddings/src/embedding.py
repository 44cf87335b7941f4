"""Embedding schemes: rotation systems with edge signatures on compact surfaces.

A face walk is an orbit of states ``(dart, sign)``. From state ``(h, s)`` the walk
traverses the edge of ``h``, arrives at the partner dart ``h'`` with sign
``s * signature(edge)`` and leaves along the successor of ``h'`` (sign +1) or its
predecessor (sign -1) in the rotation at the arrival vertex. Every face is traced
twice, once per direction; the reverse of state ``(h, s)`` is
``(partner(h), -s * signature(edge))``.
"""

import logging
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum

from .errors import Disconnected, GraphMismatch, HasLoops, InvalidScheme
from .multigraph import Dart, Multigraph, is_connected

logger = logging.getLogger(__name__)

State = tuple[Dart, int]


class Orientation(str, Enum):
    """Result of comparing the rotation at one vertex in two schemes."""

    SAME = "same"
    REVERSED = "reversed"
    MISMATCH = "mismatch"


def least_rotation(seq: Sequence) -> tuple:
    """Lexicographically least cyclic rotation of ``seq``."""
    items = tuple(seq)
    if not items:
        return items
    return min(items[i:] + items[:i] for i in range(len(items)))


def cyclic_equal(a: Sequence, b: Sequence) -> bool:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(a[i:] + a[:i] == b for i in range(len(a)))


@dataclass(frozen=True)
class FacialWalk:
    """A closed face walk: darts traversed and the sign carried on each."""

    darts: tuple[Dart, ...]
    signs: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def key(self) -> tuple[Dart, ...]:
        """Dart sequence up to rotation and reversal; used to compare faces across schemes."""
        reverse = [d.partner() for d in reversed(self.darts)]
        return min(least_rotation(self.darts), least_rotation(reverse))

    def vertices(self, graph: Multigraph) -> list[int]:
        """Vertices in walk order (the vertex each dart leaves)."""
        return [graph.vertex_of(d) for d in self.darts]

    def edges(self) -> list[int]:
        return [d.edge for d in self.darts]


@dataclass(frozen=True)
class FaceSet:
    """All facial walks of a scheme in deterministic order."""

    faces: tuple[FacialWalk, ...]

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[FacialWalk]:
        return iter(self.faces)

    def __getitem__(self, i: int) -> FacialWalk:
        return self.faces[i]

    @property
    def lengths(self) -> list[int]:
        return [len(f) for f in self.faces]

    def keys(self) -> list[tuple[Dart, ...]]:
        return sorted(f.key for f in self.faces)


class EmbeddingScheme:
    """Rotation system plus per-edge signature over a Multigraph."""

    __slots__ = ("graph", "rotation", "signature", "_position")

    def __init__(
        self,
        graph: Multigraph,
        rotation: Sequence[Sequence[Dart]],
        signature: Sequence[int] | None = None,
    ):
        self.graph = graph
        self.rotation: tuple[tuple[Dart, ...], ...] = tuple(tuple(r) for r in rotation)
        if signature is None:
            signature = [1] * graph.m
        self.signature: tuple[int, ...] = tuple(int(s) for s in signature)
        self._validate()
        self._position: dict[Dart, int] = {}
        for r in self.rotation:
            for i, d in enumerate(r):
                self._position[d] = i

    def _validate(self) -> None:
        g = self.graph
        if len(self.rotation) != g.n:
            raise InvalidScheme(f"Expected {g.n} rotations, got {len(self.rotation)}")
        if len(self.signature) != g.m:
            raise InvalidScheme(f"Expected {g.m} signature entries, got {len(self.signature)}")
        for e, s in enumerate(self.signature):
            if s not in (1, -1):
                raise InvalidScheme(f"Signature of edge {e} must be +1 or -1, got {s}")
        for v, r in enumerate(self.rotation):
            if len(set(r)) != len(r) or sorted(r) != list(g.darts_at(v)):
                raise InvalidScheme(
                    f"Rotation at {g.labels[v]!r} must list each of its darts exactly once"
                )

    def succ(self, d: Dart) -> Dart:
        r = self.rotation[self.graph.vertex_of(d)]
        return r[(self._position[d] + 1) % len(r)]

    def pred(self, d: Dart) -> Dart:
        r = self.rotation[self.graph.vertex_of(d)]
        return r[(self._position[d] - 1) % len(r)]

    def sign(self, e: int) -> int:
        return self.signature[e]

    @property
    def all_positive(self) -> bool:
        return all(s == 1 for s in self.signature)

    def mirror(self) -> "EmbeddingScheme":
        """Scheme with every rotation reversed."""
        return EmbeddingScheme(
            self.graph, [tuple(reversed(r)) for r in self.rotation], self.signature
        )

    def flip_vertex(self, v: int) -> "EmbeddingScheme":
        """Local gauge switch: reverse the rotation at ``v`` and negate its non-loop edges."""
        self.graph.check_vertex(v)
        rotation = list(self.rotation)
        rotation[v] = tuple(reversed(rotation[v]))
        signature = list(self.signature)
        for e, (a, b) in enumerate(self.graph.ends):
            if (a == v) != (b == v):
                signature[e] = -signature[e]
        return EmbeddingScheme(self.graph, rotation, signature)

    def code(self) -> tuple:
        """Total order key over schemes of the same graph."""
        return (
            tuple(tuple((d.edge, d.end) for d in r) for r in self.rotation),
            self.signature,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddingScheme):
            return NotImplemented
        return self.graph == other.graph and self.code() == other.code()

    def __hash__(self) -> int:
        return hash(self.code())

    def __repr__(self) -> str:
        return f"EmbeddingScheme(n={self.graph.n}, m={self.graph.m})"


def _step(s: EmbeddingScheme, state: State) -> State:
    h, sigma = state
    arrival = h.partner()
    sigma = sigma * s.sign(h.edge)
    following = s.succ(arrival) if sigma > 0 else s.pred(arrival)
    return following, sigma


def _reverse_state(s: EmbeddingScheme, state: State) -> State:
    h, sigma = state
    return h.partner(), -sigma * s.sign(h.edge)


def _orbits(s: EmbeddingScheme) -> list[list[State]]:
    visited: set[State] = set()
    orbits = []
    for r in s.rotation:
        for d in r:
            for sigma in (1, -1):
                start = (d, sigma)
                if start in visited:
                    continue
                orbit = []
                state = start
                while state not in visited:
                    visited.add(state)
                    orbit.append(state)
                    state = _step(s, state)
                if state != start:
                    raise InvalidScheme("Face tracing produced a non-closed orbit")
                orbits.append(orbit)
    return orbits


def trace_faces(s: EmbeddingScheme) -> FaceSet:
    """Decompose all ``(dart, sign)`` states into faces.

    Each face keeps the one of its two direction orbits whose least rotation is
    smaller, rotated to start at that least element. Faces are ordered by
    their reversal-invariant key.
    """
    orbits = _orbits(s)
    orbit_of: dict[State, int] = {}
    for i, orbit in enumerate(orbits):
        for state in orbit:
            orbit_of[state] = i

    faces = []
    paired: set[int] = set()
    for i, orbit in enumerate(orbits):
        if i in paired:
            continue
        j = orbit_of[_reverse_state(s, orbit[0])]
        paired.update((i, j))
        if j == i:
            logger.warning("Face orbit is its own reverse; counting it once")
        best = min(least_rotation(orbit), least_rotation(orbits[j]))
        faces.append(
            FacialWalk(tuple(d for d, _ in best), tuple(sigma for _, sigma in best))
        )

    faces.sort(key=lambda f: (f.key, f.darts))
    face_set = FaceSet(tuple(faces))
    assert sum(face_set.lengths) == 2 * s.graph.m
    return face_set


def euler_genus(s: EmbeddingScheme) -> int:
    """Euler genus ``2 - n + m - f`` of a scheme over a connected graph."""
    if not is_connected(s.graph):
        raise Disconnected("Euler genus requires a connected graph")
    g = s.graph
    return 2 - g.n + g.m - len(trace_faces(s))


def is_sphere_triangulation(s: EmbeddingScheme) -> bool:
    """Genus 0 with every facial walk of length 3."""
    if s.graph.has_loops:
        raise HasLoops("Sphere triangulation test requires a loopless graph")
    if s.graph.n < 3:
        return False
    faces = trace_faces(s)
    if not is_connected(s.graph):
        raise Disconnected("Sphere triangulation test requires a connected graph")
    genus = 2 - s.graph.n + s.graph.m - len(faces)
    return genus == 0 and all(length == 3 for length in faces.lengths)


@dataclass(frozen=True)
class MaximalityResult:
    maximal: bool
    witness: tuple[int, int] | None = None
    face: FacialWalk | None = None


def is_edge_maximal(s: EmbeddingScheme) -> MaximalityResult:
    """True iff no facial walk visits two distinct non-adjacent vertices.

    On failure the first offending pair (in face order, then walk order) is returned.
    """
    g = s.graph
    if not is_connected(g):
        raise Disconnected("Edge-maximality requires a connected graph")
    for face in trace_faces(s):
        seen: list[int] = []
        for v in face.vertices(g):
            if v in seen:
                continue
            for u in seen:
                if not g.adjacent(u, v):
                    return MaximalityResult(False, (min(u, v), max(u, v)), face)
            seen.append(v)
    return MaximalityResult(True)


def _check_same_graph(s1: EmbeddingScheme, s2: EmbeddingScheme) -> None:
    if s1.graph != s2.graph:
        raise GraphMismatch("Schemes are defined over different graphs")


def rotation_orientation_match(
    s1: EmbeddingScheme, s2: EmbeddingScheme, v: int
) -> Orientation:
    """Compare the cyclic dart order at ``v`` in two schemes up to rotation."""
    _check_same_graph(s1, s2)
    s1.graph.check_vertex(v)
    r1, r2 = s1.rotation[v], s2.rotation[v]
    if cyclic_equal(r1, r2):
        return Orientation.SAME
    if cyclic_equal(r1, tuple(reversed(r2))):
        return Orientation.REVERSED
    return Orientation.MISMATCH


def face_sets_equal(s1: EmbeddingScheme, s2: EmbeddingScheme) -> bool:
    """Equal multisets of facial walks, each compared up to rotation and reversal."""
    _check_same_graph(s1, s2)
    return trace_faces(s1).keys() == trace_faces(s2).keys()


def spanning_tree_edges(g: Multigraph, root: int = 0) -> list[int]:
    """Edge ids of a breadth-first spanning tree (least edge id first)."""
    if g.n == 0:
        return []
    tree = []
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in g.darts_at(v):
            w = g.far_end(d)
            if w not in seen:
                seen.add(w)
                tree.append(d.edge)
                queue.append(w)
    return tree


def orientability(s: EmbeddingScheme) -> str:
    """Whether an all-positive gauge is reachable: ``yes``, ``no`` or ``unknown``.

    Vertex switches are propagated along a spanning tree so that tree edges become
    positive; the scheme is orientable iff every remaining edge is then positive.
    """
    g = s.graph
    if not is_connected(g):
        return "unknown"
    flipped = {0: False} if g.n else {}
    queue = deque([0] if g.n else [])
    while queue:
        v = queue.popleft()
        for d in g.darts_at(v):
            w = g.far_end(d)
            if w not in flipped:
                flipped[w] = flipped[v] ^ (s.sign(d.edge) < 0)
                queue.append(w)
    for e, (a, b) in enumerate(g.ends):
        effective = s.sign(e) * (-1 if flipped[a] != flipped[b] else 1)
        if effective < 0:
            return "no"
    return "yes"
