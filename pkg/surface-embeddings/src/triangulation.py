"""Spherical triangulations: side decomposition, interior-vertex candidates and
inductive reconstruction of a triangulation from a locally Hamiltonian multigraph
with exactly ``3n - 6`` edges.

Reconstruction removes a vertex ``v`` of degree at most 5 (possibly adding helper
edges among its neighbors), triangulates the smaller graph recursively and then
puts ``v`` back into the face that the removal left behind. Every change to the
rotation system is recorded as a primitive operation, so the returned trace can be
replayed from the base triangle.
"""

import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any, Literal

from .embedding import EmbeddingScheme, FacialWalk, euler_genus, is_sphere_triangulation, trace_faces
from .errors import (
    Disconnected,
    EdgeCountMismatch,
    HasLoops,
    NotACycle,
    NotGenusZero,
    NotLocallyHamiltonian,
    PreconditionViolated,
    ReconstructionFailed,
)
from .local_hamiltonicity import (
    DEFAULT_MAX_DEGREE,
    is_locally_hamiltonian,
    iter_hamiltonian_orderings,
)
from .multigraph import Dart, Multigraph, is_connected, is_simple_vertex

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 20000

Side = Literal["interior", "exterior"]


# Cycles and sides


@dataclass(frozen=True)
class CycleSpec:
    """A 2-cycle (two parallel edges) or a 3-cycle, given by edge ids."""

    edges: tuple[int, ...]

    def vertices(self, g: Multigraph) -> list[int]:
        validate_cycle(g, self)
        return sorted({v for e in self.edges for v in g.ends[e]})


def validate_cycle(g: Multigraph, c: CycleSpec) -> None:
    edges = c.edges
    if len(edges) not in (2, 3) or len(set(edges)) != len(edges):
        raise NotACycle(f"A cycle needs 2 or 3 distinct edges, got {list(edges)}")
    for e in edges:
        if not 0 <= e < g.m:
            raise NotACycle(f"Unknown edge id {e}")
        if g.ends[e][0] == g.ends[e][1]:
            raise NotACycle(f"Edge {e} is a loop")
    pairs = [frozenset(g.ends[e]) for e in edges]
    if len(edges) == 2:
        if pairs[0] != pairs[1]:
            raise NotACycle("A 2-cycle needs two parallel edges")
        return
    counts = Counter(v for e in edges for v in g.ends[e])
    if len(counts) != 3 or any(k != 2 for k in counts.values()) or len(set(pairs)) != 3:
        raise NotACycle("A 3-cycle needs three edges on three distinct vertices")


@dataclass(frozen=True)
class SideDecomposition:
    interior: frozenset[int]
    exterior: frozenset[int]
    interior_faces: tuple[FacialWalk, ...]
    exterior_faces: tuple[FacialWalk, ...]

    def side(self, name: Side) -> frozenset[int]:
        return self.interior if name == "interior" else self.exterior


def side_decomposition(s: EmbeddingScheme, c: CycleSpec) -> SideDecomposition:
    """Split the faces of a genus-0 scheme along a cycle by flood fill in the dual.

    The side holding the least face (in canonical face order) is the exterior.
    """
    g = s.graph
    validate_cycle(g, c)
    if euler_genus(s) != 0:
        raise NotGenusZero("Side decomposition requires a genus-0 scheme")

    faces = trace_faces(s)
    parent = list(range(len(faces)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    occurrences: dict[int, list[int]] = {}
    for fi, face in enumerate(faces):
        for d in face.darts:
            occurrences.setdefault(d.edge, []).append(fi)
    cycle_edges = set(c.edges)
    for e, fis in occurrences.items():
        if e in cycle_edges:
            continue
        for fi in fis[1:]:
            parent[find(fi)] = find(fis[0])

    roots = sorted({find(i) for i in range(len(faces))})
    if len(roots) != 2:
        raise NotACycle(f"Cycle splits the faces into {len(roots)} regions, expected 2")

    outer = find(0)
    cycle_vertices = set(c.vertices(g))
    exterior_faces = tuple(f for i, f in enumerate(faces) if find(i) == outer)
    interior_faces = tuple(f for i, f in enumerate(faces) if find(i) != outer)

    def side_vertices(group: tuple[FacialWalk, ...]) -> frozenset[int]:
        return frozenset(v for f in group for v in f.vertices(g)) - cycle_vertices

    interior, exterior = side_vertices(interior_faces), side_vertices(exterior_faces)
    if interior & exterior or len(interior) + len(exterior) + len(cycle_vertices) != g.n:
        raise NotACycle("Cycle does not separate the vertices into two sides")
    return SideDecomposition(interior, exterior, interior_faces, exterior_faces)


def _facial_triangles(s: EmbeddingScheme) -> set[frozenset[int]]:
    return {frozenset(f.edges()) for f in trace_faces(s) if len(f) == 3}


def in_nonfacial_triangle(
    g: Multigraph, v: int, facial: set[frozenset[int]]
) -> bool:
    """Whether ``v`` lies on a 3-cycle whose edge set bounds no face."""
    darts = g.darts_at(v)
    for i, a in enumerate(darts):
        for b in darts[i + 1 :]:
            y, z = g.far_end(a), g.far_end(b)
            if y == z or v in (y, z):
                continue
            for e, ends in enumerate(g.ends):
                if set(ends) == {y, z} and frozenset((a.edge, b.edge, e)) not in facial:
                    return True
    return False


def lemma1_candidates(s: EmbeddingScheme, c: CycleSpec, side: Side = "interior") -> list[int]:
    """Vertices on one side of ``c`` that are simple, have degree at most 5, at most
    two non-simple neighbors and lie on no non-facial 3-cycle.

    Raises:
        PreconditionViolated: not a sphere triangulation, ``c`` is a facial 3-cycle,
            or a vertex on the chosen side has degree below 4
    """
    g = s.graph
    if not is_sphere_triangulation(s):
        raise PreconditionViolated("triangulation", "scheme is not a sphere triangulation")
    validate_cycle(g, c)
    facial = _facial_triangles(s)
    if len(c.edges) == 3 and frozenset(c.edges) in facial:
        raise PreconditionViolated("cycle", "the 3-cycle bounds a face")

    members = side_decomposition(s, c).side(side)
    low = sorted(v for v in members if g.degree(v) < 4)
    if low:
        raise PreconditionViolated(
            "degree",
            f"{side} vertex {g.labels[low[0]]!r} has degree {g.degree(low[0])} < 4",
        )

    simple = {v: is_simple_vertex(g, v) for v in g.vertices}
    candidates = []
    for v in sorted(members):
        if not simple[v] or g.degree(v) > 5:
            continue
        if sum(1 for w in g.neighbors(v) if not simple[w]) > 2:
            continue
        if in_nonfacial_triangle(g, v, facial):
            continue
        candidates.append(v)
    return candidates


# Reconstruction

Op = tuple


@dataclass
class TraceStep:
    """One reduction: ``case`` is ``base``, ``d2``, ``d3``, ``d4`` or ``d5``."""

    case: str
    vertex: int | None
    params: dict[str, Any]
    ops: list[Op]

    def to_json(self, labels: tuple[str, ...]) -> dict[str, Any]:
        params = _jsonable(self.params, labels)
        if "neighbors" in params:
            params["neighbors"] = [labels[w] for w in params["neighbors"]]
        params["ops"] = [_op_json(op, labels) for op in self.ops]
        return {
            "case": self.case,
            "vertex": None if self.vertex is None else labels[self.vertex],
            "params": params,
        }


@dataclass
class ReconstructionTrace:
    """Steps from the input graph down to the base triangle, outermost first."""

    steps: list[TraceStep] = field(default_factory=list)
    backtracks: int = 0
    calls: int = 0

    @property
    def cases(self) -> list[str]:
        return [step.case for step in self.steps]

    @property
    def backtracking_needed(self) -> bool:
        return self.backtracks > 0

    def to_json(self, g: Multigraph) -> list[dict[str, Any]]:
        return [step.to_json(g.labels) for step in self.steps]


def _jsonable(value: Any, labels: tuple[str, ...]) -> Any:
    if isinstance(value, Dart):
        return value.to_json()
    if isinstance(value, dict):
        return {k: _jsonable(v, labels) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v, labels) for v in value]
    return value


def trace_from_json(data: list[dict[str, Any]], g: Multigraph) -> ReconstructionTrace:
    """Rebuild a trace (ops included) from its JSON form."""
    index = g.index

    def dart(pair: list[int]) -> Dart:
        return Dart(int(pair[0]), int(pair[1]))

    steps = []
    for item in data:
        ops: list[Op] = []
        for op in item["params"].get("ops", []):
            kind = op["op"]
            if kind == "add_edge":
                ops.append((kind, int(op["edge"]), index(op["ends"][0]), index(op["ends"][1])))
            elif kind == "remove_edge":
                ops.append((kind, int(op["edge"])))
            elif kind == "set_rotation":
                ops.append((kind, index(op["vertex"]), tuple(dart(d) for d in op["darts"])))
            else:
                ops.append((kind, index(op["vertex"]), dart(op["anchor"]), dart(op["dart"])))
        params = {k: v for k, v in item["params"].items() if k != "ops"}
        if "neighbors" in params:
            params["neighbors"] = [index(w) for w in params["neighbors"]]
        vertex = item.get("vertex")
        steps.append(TraceStep(item["case"], None if vertex is None else index(vertex), params, ops))
    return ReconstructionTrace(steps=steps)


def _op_json(op: Op, labels: tuple[str, ...]) -> dict[str, Any]:
    kind = op[0]
    if kind == "add_edge":
        return {"op": kind, "edge": op[1], "ends": [labels[op[2]], labels[op[3]]]}
    if kind == "remove_edge":
        return {"op": kind, "edge": op[1]}
    if kind == "set_rotation":
        return {"op": kind, "vertex": labels[op[1]], "darts": [d.to_json() for d in op[2]]}
    return {"op": kind, "vertex": labels[op[1]], "anchor": op[2].to_json(), "dart": op[3].to_json()}


class RotationSystem:
    """Mutable orientable rotation system keyed by original vertex and edge ids."""

    def __init__(self):
        self.rot: dict[int, list[Dart]] = {}
        self.ends: dict[int, tuple[int, int]] = {}

    def copy(self) -> "RotationSystem":
        other = RotationSystem()
        other.rot = {v: list(r) for v, r in self.rot.items()}
        other.ends = dict(self.ends)
        return other

    def vertex_of(self, d: Dart) -> int:
        return self.ends[d.edge][d.end]

    def succ(self, d: Dart) -> Dart:
        r = self.rot[self.vertex_of(d)]
        return r[(r.index(d) + 1) % len(r)]

    def apply(self, op: Op) -> None:
        kind = op[0]
        if kind == "add_edge":
            _, e, a, b = op
            self.ends[e] = (a, b)
        elif kind == "remove_edge":
            e = op[1]
            a, b = self.ends.pop(e)
            for v, end in ((a, 0), (b, 1)):
                self.rot[v].remove(Dart(e, end))
        elif kind == "set_rotation":
            self.rot[op[1]] = list(op[2])
        elif kind == "insert_after":
            _, v, anchor, dart = op
            r = self.rot[v]
            r.insert(r.index(anchor) + 1, dart)
        elif kind == "insert_before":
            _, v, anchor, dart = op
            r = self.rot[v]
            r.insert(r.index(anchor), dart)
        else:
            raise ValueError(f"Unknown surgery op: {kind}")

    def face_of(self, start: Dart) -> list[Dart]:
        walk = [start]
        d = self.succ(start.partner())
        while d != start:
            walk.append(d)
            d = self.succ(d.partner())
        return walk

    def faces(self) -> list[list[Dart]]:
        seen: set[Dart] = set()
        faces = []
        for v in sorted(self.rot):
            for d in self.rot[v]:
                if d not in seen:
                    walk = self.face_of(d)
                    seen.update(walk)
                    faces.append(walk)
        return faces


class _Frame:
    """A graph during reduction: original vertex ids and edge ids, plus helper edges
    with ids from ``helpers_from`` on."""

    def __init__(
        self, vertices: set[int], ends: dict[int, tuple[int, int]], helpers_from: int
    ):
        self.vertices = frozenset(vertices)
        self.ends = dict(ends)
        self.helpers_from = helpers_from

    @property
    def key(self) -> tuple:
        """Memo key; helper edges count by their ends only."""
        originals = frozenset((e, ab) for e, ab in self.ends.items() if e < self.helpers_from)
        helpers = tuple(sorted(ab for e, ab in self.ends.items() if e >= self.helpers_from))
        return (self.vertices, originals, helpers)

    def darts_at(self, v: int) -> list[Dart]:
        darts = []
        for e, (a, b) in self.ends.items():
            if a == v:
                darts.append(Dart(e, 0))
            if b == v:
                darts.append(Dart(e, 1))
        return sorted(darts)

    def far_end(self, d: Dart) -> int:
        return self.ends[d.edge][1 - d.end]

    def without_vertex(self, v: int) -> "_Frame":
        return _Frame(
            self.vertices - {v},
            {e: ab for e, ab in self.ends.items() if v not in ab},
            self.helpers_from,
        )

    def without_edge(self, e: int) -> "_Frame":
        return _Frame(
            self.vertices, {k: ab for k, ab in self.ends.items() if k != e}, self.helpers_from
        )

    def with_edges(self, extra: dict[int, tuple[int, int]]) -> "_Frame":
        return _Frame(self.vertices, {**self.ends, **extra}, self.helpers_from)

    def to_multigraph(self) -> tuple[Multigraph, list[int], list[int]]:
        vertex_ids = sorted(self.vertices)
        edge_ids = sorted(self.ends)
        position = {v: i for i, v in enumerate(vertex_ids)}
        graph = Multigraph(
            [str(v) for v in vertex_ids],
            [(position[self.ends[e][0]], position[self.ends[e][1]]) for e in edge_ids],
        )
        return graph, vertex_ids, edge_ids


@dataclass
class _Context:
    budget: int
    next_helper: int
    calls: int = 0
    backtracks: int = 0
    failed: set = field(default_factory=set)
    tags: set[str] = field(default_factory=set)


def _hamiltonian_orders(frame: _Frame, v: int) -> Iterator[tuple[Dart, ...]]:
    graph, vertex_ids, edge_ids = frame.to_multigraph()
    dense = vertex_ids.index(v)
    for order in iter_hamiltonian_orderings(graph, dense, interchangeable=True):
        yield tuple(Dart(edge_ids[d.edge], d.end) for d in order)


def _labelings(order: tuple[Dart, ...]) -> list[tuple[Dart, ...]]:
    """The rotations and reflections of a cyclic order."""
    variants = []
    for seq in (order, tuple(reversed(order))):
        for i in range(len(seq)):
            variants.append(seq[i:] + seq[:i])
    return variants


def _preference(frame: _Frame, v: int) -> tuple:
    """Ordering of reduction candidates: small degree, few multiple edges at ``v``,
    few chords among its neighbors, few non-simple neighbors, then least degree."""
    darts = frame.darts_at(v)
    degree = len(darts)
    pair_count = Counter(frozenset(ab) for ab in frame.ends.values())
    multi_incident = sum(1 for d in darts if pair_count[frozenset(frame.ends[d.edge])] > 1)
    neighbors = {frame.far_end(d) for d in darts}
    inner_edges = sum(
        1 for a, b in frame.ends.values() if a in neighbors and b in neighbors and a != b
    )
    k = len(neighbors)
    chords = max(0, inner_edges - (k if k >= 3 else (1 if k == 2 else 0)))

    def simple(w: int) -> bool:
        ends = [frame.far_end(d) for d in frame.darts_at(w)]
        return len(ends) == len(set(ends))

    nonsimple = sum(1 for w in neighbors if not simple(w))
    return (0 if degree <= 3 else 1, multi_incident, chords, nonsimple, degree, v)


def _face_corners(rot: RotationSystem, face: list[Dart]) -> list[int]:
    return [rot.vertex_of(d) for d in face]


def _star_ops(
    rot: RotationSystem, face: list[Dart], v: int, v_darts: list[Dart], frame: _Frame
) -> list[Op] | None:
    """Ops inserting ``v`` inside ``face`` with one new edge per corner.

    Corner ``i`` sits at the vertex that dart ``face[i]`` leaves, between the partner of
    ``face[i-1]`` and ``face[i]``. The new rotation at ``v`` lists the new darts in the
    reverse of the face order so that every new face is a triangle.
    """
    available: dict[int, list[Dart]] = {}
    for d in sorted(v_darts):
        available.setdefault(frame.far_end(d), []).append(d)
    corners = _face_corners(rot, face)
    if Counter(corners) != Counter({u: len(ds) for u, ds in available.items()}):
        return None

    ops: list[Op] = []
    at_v = []
    for d in v_darts:
        ops.append(("add_edge", d.edge, *frame.ends[d.edge]))
    for i, u in enumerate(corners):
        own = available[u].pop(0)
        at_v.append(own)
        ops.append(("insert_after", u, face[i - 1].partner(), own.partner()))
    ops.append(("set_rotation", v, tuple(reversed(at_v))))
    return ops


def _apply_all(rot: RotationSystem, ops: list[Op]) -> RotationSystem:
    result = rot.copy()
    for op in ops:
        result.apply(op)
    return result


class _Reconstructor:
    def __init__(self, g: Multigraph, budget: int, max_degree: int = DEFAULT_MAX_DEGREE):
        self.g = g
        self.max_degree = max_degree
        self.ctx = _Context(budget=budget, next_helper=g.m)

    def fresh_edge(self) -> int:
        e = self.ctx.next_helper
        self.ctx.next_helper += 1
        return e

    def solve(self, frame: _Frame) -> tuple[RotationSystem, list[TraceStep]] | None:
        ctx = self.ctx
        ctx.calls += 1
        if ctx.calls > ctx.budget:
            raise ReconstructionFailed(
                f"Reduction budget of {ctx.budget} calls exhausted", tag="budget"
            )
        if frame.key in ctx.failed:
            return None
        if len(frame.vertices) == 3:
            return self.base(frame)

        candidates = [
            v for v in frame.vertices if 2 <= len(frame.darts_at(v)) <= 5
        ]
        candidates.sort(key=lambda v: _preference(frame, v))
        for v in candidates:
            degree = len(frame.darts_at(v))
            for case, params, reduced, reinsert in self.options(frame, v, degree):
                if not self.admissible(reduced):
                    continue
                sub = self.solve(reduced)
                if sub is None:
                    ctx.backtracks += 1
                    continue
                rot, steps = sub
                ops = reinsert(rot)
                if ops is None:
                    ctx.backtracks += 1
                    logger.debug(f"Reinsertion of {v} ({case}) failed, backtracking")
                    continue
                logger.debug(f"Reduced vertex {v} via {case}")
                step = TraceStep(case, v, params, ops)
                return _apply_all(rot, ops), [step, *steps]
        ctx.failed.add(frame.key)
        return None

    def admissible(self, frame: _Frame) -> bool:
        graph, _, _ = frame.to_multigraph()
        return (
            graph.m == 3 * graph.n - 6
            and is_connected(graph)
            and is_locally_hamiltonian(graph, self.max_degree).holds
        )

    def base(self, frame: _Frame) -> tuple[RotationSystem, list[TraceStep]] | None:
        pairs = [frozenset(ab) for ab in frame.ends.values()]
        if len(frame.ends) != 3 or len(set(pairs)) != 3 or any(len(p) != 2 for p in pairs):
            return None
        ops: list[Op] = [("add_edge", e, a, b) for e, (a, b) in sorted(frame.ends.items())]
        for v in sorted(frame.vertices):
            ops.append(("set_rotation", v, tuple(frame.darts_at(v))))
        return _apply_all(RotationSystem(), ops), [TraceStep("base", None, {}, ops)]

    def options(self, frame: _Frame, v: int, degree: int):
        if degree == 2:
            yield from self.options_d2(frame, v)
        elif degree == 3:
            yield from self.options_d3(frame, v)
        elif degree == 4:
            yield from self.options_fan(frame, v, "d4", 1)
        elif degree == 5:
            yield from self.options_fan(frame, v, "d5", 2)

    def options_d2(self, frame: _Frame, v: int):
        v_darts = frame.darts_at(v)
        w1, w2 = (frame.far_end(d) for d in v_darts)
        if w1 == w2:
            self.ctx.tags.add("double-edge-pendant")
            return
        for v1, v2 in ((w1, w2), (w2, w1)):
            if len(frame.darts_at(v1)) < 3:
                continue
            to_v = next(d.partner() for d in v_darts if frame.far_end(d) == v1)
            order = next(_hamiltonian_orders(frame, v1), None)
            if order is None:
                continue
            i = order.index(to_v)
            flanking = [order[i - 1], order[(i + 1) % len(order)]]
            if any(frame.far_end(d) != v2 for d in flanking):
                continue
            for e1_dart, e2_dart in (flanking, flanking[::-1]):
                e1, e2 = e1_dart.edge, e2_dart.edge
                reduced = frame.without_vertex(v).without_edge(e1)
                params = {"neighbors": [v1, v2], "e1": e1, "e2": e2}
                yield "d2", params, reduced, self.reinsert_d2(frame, v, v1, e1, e2)

    def reinsert_d2(self, frame: _Frame, v: int, v1: int, e1: int, e2: int):
        def reinsert(rot: RotationSystem) -> list[Op] | None:
            a, b = frame.ends[e1]
            d1 = Dart(e1, 0) if a == v1 else Dart(e1, 1)
            d2 = d1.partner()
            e2_at_v1 = Dart(e2, 0) if rot.ends[e2][0] == v1 else Dart(e2, 1)
            v2 = frame.ends[e1][d2.end]
            ops: list[Op] = [
                ("add_edge", e1, a, b),
                ("insert_after", v1, e2_at_v1, d1),
                ("insert_before", v2, e2_at_v1.partner(), d2),
            ]
            widened = _apply_all(rot, ops)
            face = widened.face_of(d1)
            star = _star_ops(widened, face, v, frame.darts_at(v), frame)
            return None if star is None else ops + star

        return reinsert

    def options_d3(self, frame: _Frame, v: int):
        v_darts = frame.darts_at(v)
        neighbors = {frame.far_end(d) for d in v_darts}
        if len(neighbors) != 3:
            return
        reduced = frame.without_vertex(v)

        def reinsert(rot: RotationSystem) -> list[Op] | None:
            matching = [
                face
                for face in rot.faces()
                if len(face) == 3 and set(_face_corners(rot, face)) == neighbors
            ]
            if not matching:
                return None
            face = min(matching, key=lambda f: sorted(d.edge for d in f))
            return _star_ops(rot, face, v, v_darts, frame)

        yield "d3", {"neighbors": sorted(neighbors)}, reduced, reinsert

    def options_fan(self, frame: _Frame, v: int, case: str, helpers: int):
        """Degree 4 and 5: add ``v1 v3`` (and ``v1 v4``), remove ``v``, and later
        require the triangles fanned from ``v1`` to be faces."""
        v_darts = frame.darts_at(v)
        if case == "d5" and len({frame.far_end(d) for d in v_darts}) != 5:
            return
        seen: set[tuple[int, ...]] = set()
        preferred, fallback = [], []
        for order in _hamiltonian_orders(frame, v):
            for labeling in _labelings(order):
                ends = [frame.far_end(d) for d in labeling]
                targets = [2, 3][:helpers]
                chosen = (ends[0], *(ends[t] for t in targets))
                if chosen in seen or any(ends[0] == ends[t] for t in targets):
                    continue
                seen.add(chosen)
                adjacent = any(
                    {ends[0], ends[t]} == set(ab) for t in targets for ab in frame.ends.values()
                )
                (fallback if adjacent else preferred).append(ends)
        for ends in preferred + fallback:
            v1 = ends[0]
            extra = {self.fresh_edge(): (v1, ends[t]) for t in [2, 3][:helpers]}
            reduced = frame.without_vertex(v).with_edges(extra)
            params = {"neighbors": ends, "helpers": sorted(extra)}
            yield case, params, reduced, self.reinsert_fan(frame, v, sorted(extra))

    def reinsert_fan(self, frame: _Frame, v: int, helper_edges: list[int]):
        def reinsert(rot: RotationSystem) -> list[Op] | None:
            survivors = []
            for h in helper_edges:
                for end in (0, 1):
                    face = rot.face_of(Dart(h, end))
                    if len(face) != 3:
                        return None
                    survivors.extend(d for d in face if d.edge not in helper_edges)
            ops: list[Op] = [("remove_edge", h) for h in helper_edges]
            opened = _apply_all(rot, ops)
            face = opened.face_of(survivors[0])
            star = _star_ops(opened, face, v, frame.darts_at(v), frame)
            return None if star is None else ops + star

        return reinsert


def _check_reconstruction_input(g: Multigraph, max_degree: int) -> None:
    if g.has_loops:
        raise HasLoops("Reconstruction requires a loopless graph")
    if g.n < 3:
        raise EdgeCountMismatch(f"Reconstruction needs n >= 3, got n={g.n}")
    if not is_connected(g):
        raise Disconnected("Reconstruction requires a connected graph")
    if g.m != 3 * g.n - 6:
        raise EdgeCountMismatch(f"Expected 3n-6 = {3 * g.n - 6} edges, got {g.m}")
    result = is_locally_hamiltonian(g, max_degree)
    if not result.holds:
        raise NotLocallyHamiltonian(
            f"Vertex {g.labels[result.failing_vertex]!r} admits no Hamiltonian ordering"
        )


def _scheme_from_rotation(g: Multigraph, rot: RotationSystem) -> EmbeddingScheme:
    stray = sorted(e for e in rot.ends if e >= g.m)
    if stray:
        raise ReconstructionFailed(f"Helper edges {stray} survived reconstruction", tag="helper")
    return EmbeddingScheme(g, [rot.rot[v] for v in g.vertices])


def reconstruct_triangulation(
    g: Multigraph, budget: int = DEFAULT_BUDGET, max_degree: int = DEFAULT_MAX_DEGREE
) -> tuple[EmbeddingScheme, ReconstructionTrace]:
    """Build a genus-0 all-triangle scheme of ``g`` together with its reduction trace.

    Raises:
        EdgeCountMismatch: ``m != 3n - 6``
        NotLocallyHamiltonian: some vertex has no Hamiltonian ordering
        Disconnected: ``g`` is not connected
        DegreeTooLarge: a vertex degree exceeds ``max_degree`` during the search
        ReconstructionFailed: backtracking exhausted (or the budget ran out)
    """
    _check_reconstruction_input(g, max_degree)
    solver = _Reconstructor(g, budget, max_degree)
    frame = _Frame(set(g.vertices), dict(enumerate(g.ends)), g.m)
    try:
        solved = solver.solve(frame)
    except ReconstructionFailed as e:
        logger.error(f"Reconstruction aborted after {solver.ctx.calls} calls: {e}")
        raise

    trace = ReconstructionTrace(backtracks=solver.ctx.backtracks, calls=solver.ctx.calls)
    if solved is None:
        tag = "double-edge-pendant" if "double-edge-pendant" in solver.ctx.tags else "exhausted"
        logger.error(
            f"Reconstruction failed for n={g.n}, m={g.m} after {solver.ctx.calls} calls "
            f"({solver.ctx.backtracks} backtracks)"
        )
        raise ReconstructionFailed("No reduction sequence produced a triangulation", tag=tag, trace=trace)

    rot, steps = solved
    trace.steps = steps
    scheme = _scheme_from_rotation(g, rot)
    if not is_sphere_triangulation(scheme):
        logger.error(f"Reconstructed scheme is not a sphere triangulation: {trace.to_json(g)}")
        raise ReconstructionFailed("Result failed validation", tag="invalid", trace=trace)
    if trace.backtracking_needed:
        logger.warning(f"Reconstruction needed {trace.backtracks} backtracks")
    logger.info(f"Reconstructed triangulation n={g.n}, m={g.m} via {trace.cases}")
    return scheme, trace


def replay_trace(trace: ReconstructionTrace, g: Multigraph) -> EmbeddingScheme:
    """Apply the recorded surgeries from the base triangle outward."""
    rot = RotationSystem()
    for step in reversed(trace.steps):
        for op in step.ops:
            rot.apply(op)
    return _scheme_from_rotation(g, rot)
