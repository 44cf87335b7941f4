"""Building sphere triangulations: coordinates, stacking and gluing along triangles."""

import logging
import random
from collections.abc import Sequence

import numpy as np

from .embedding import EmbeddingScheme, FacialWalk, is_sphere_triangulation, trace_faces
from .errors import InvalidScheme, PreconditionViolated
from .multigraph import Dart, Multigraph
from .triangulation import RotationSystem

logger = logging.getLogger(__name__)


def scheme_from_coordinates(
    labels: Sequence[str], edges: Sequence[tuple[int, int]], points: Sequence[Sequence[float]]
) -> EmbeddingScheme:
    """Rotation system of a convex polytope: neighbors counter-clockwise seen from outside.

    ``points`` are vertex positions around the origin; each rotation sorts the darts by
    their angle in the tangent plane at the vertex.
    """
    g = Multigraph(labels, edges)
    coords = np.asarray(points, dtype=float)
    rotation = []
    for v in g.vertices:
        p = coords[v] / np.linalg.norm(coords[v])
        darts = g.darts_at(v)
        ref = coords[g.far_end(darts[0])] - coords[v]
        t1 = ref - np.dot(ref, p) * p
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(p, t1)

        def angle(d: Dart) -> float:
            direction = coords[g.far_end(d)] - coords[v]
            return float(np.arctan2(np.dot(direction, t2), np.dot(direction, t1)) % (2 * np.pi))

        rotation.append(sorted(darts, key=angle))
    return EmbeddingScheme(g, rotation)


def triangle_scheme(labels: Sequence[str] = ("a", "b", "c")) -> EmbeddingScheme:
    g = Multigraph(labels, [(0, 1), (1, 2), (2, 0)])
    return EmbeddingScheme(
        g,
        [
            (Dart(0, 0), Dart(2, 1)),
            (Dart(1, 0), Dart(0, 1)),
            (Dart(2, 0), Dart(1, 1)),
        ],
    )


def positive_walk(s: EmbeddingScheme, face: FacialWalk | Sequence[Dart]) -> tuple[Dart, ...]:
    """The darts of a face of an all-positive scheme, in successor direction."""
    if isinstance(face, FacialWalk):
        darts = face.darts
        if face.signs and face.signs[0] < 0:
            darts = tuple(d.partner() for d in reversed(darts))
    else:
        darts = tuple(face)
    for i, h in enumerate(darts):
        if s.succ(darts[i - 1].partner()) != h:
            raise InvalidScheme(f"Darts {list(darts)} do not form a face walk")
    return darts


def _rotation_system(s: EmbeddingScheme) -> RotationSystem:
    rot = RotationSystem()
    rot.ends = dict(enumerate(s.graph.ends))
    rot.rot = {v: list(r) for v, r in enumerate(s.rotation)}
    return rot


def stack_vertex(s: EmbeddingScheme, face: Sequence[Dart], label: str) -> EmbeddingScheme:
    """Insert a new vertex inside a triangular face and join it to the three corners."""
    g = s.graph
    rot = _rotation_system(s)
    v = g.n
    new_darts = []
    for i, h in enumerate(face):
        corner = g.vertex_of(h)
        e = g.m + i
        rot.apply(("add_edge", e, corner, v))
        rot.apply(("insert_after", corner, face[i - 1].partner(), Dart(e, 0)))
        new_darts.append(Dart(e, 1))
    rot.apply(("set_rotation", v, tuple(reversed(new_darts))))
    graph = Multigraph([*g.labels, label], [rot.ends[e] for e in range(g.m + len(face))])
    return EmbeddingScheme(graph, [rot.rot[u] for u in graph.vertices])


def random_stacked_triangulation(n: int, rng: random.Random) -> EmbeddingScheme:
    """Simple sphere triangulation grown from a triangle by stacking into random faces."""
    if n < 3:
        raise ValueError(f"A triangulation needs at least 3 vertices, got {n}")
    s = triangle_scheme(("v0", "v1", "v2"))
    for k in range(3, n):
        rot = _rotation_system(s)
        faces = sorted(rot.faces())
        s = stack_vertex(s, rng.choice(faces), f"v{k}")
    return s


def subdivide_edge(s: EmbeddingScheme, e: int, label: str) -> EmbeddingScheme:
    """Put a degree-4 vertex on edge ``e`` and join it to the two opposite corners.

    Edge ``e`` becomes the half at its first endpoint; the three new edges get the
    next ids. No vertex loses degree.
    """
    g = s.graph
    if not s.all_positive or not is_sphere_triangulation(s):
        raise PreconditionViolated(
            "triangulation", "subdivision needs an all-positive sphere triangulation"
        )
    if not 0 <= e < g.m:
        raise PreconditionViolated("edge", f"unknown edge id {e}")
    if g.ends[e][0] == g.ends[e][1]:
        raise PreconditionViolated("edge", f"edge {e} is a loop")

    first, second = Dart(e, 0), Dart(e, 1)
    h1 = s.succ(second)
    h2 = s.succ(h1.partner())
    k1 = s.succ(first)
    k2 = s.succ(k1.partner())
    quad = [k1, k2, h1, h2]

    rot = _rotation_system(s)
    rot.apply(("remove_edge", e))
    v = g.n
    ids = [e, g.m, g.m + 1, g.m + 2]
    new_darts = []
    for i, h in enumerate(quad):
        corner = g.vertex_of(h)
        rot.apply(("add_edge", ids[i], corner, v))
        rot.apply(("insert_after", corner, quad[i - 1].partner(), Dart(ids[i], 0)))
        new_darts.append(Dart(ids[i], 1))
    rot.apply(("set_rotation", v, tuple(reversed(new_darts))))
    graph = Multigraph([*g.labels, label], [rot.ends[i] for i in range(g.m + 3)])
    return EmbeddingScheme(graph, [rot.rot[u] for u in graph.vertices])


def random_min_degree_four(n: int, rng: random.Random, prefix: str = "w") -> EmbeddingScheme:
    """Simple sphere triangulation with minimum degree 4: an octahedron with
    ``n - 6`` degree-4 vertices put on random edges."""
    if n < 6:
        raise ValueError(f"Minimum degree 4 needs at least 6 vertices, got {n}")
    s = octahedron_scheme()
    for k in range(6, n):
        s = subdivide_edge(s, rng.randrange(s.graph.m), f"{prefix}{k}")
    return s


def glue_along_triangle(
    s1: EmbeddingScheme,
    face1: FacialWalk | Sequence[Dart],
    s2: EmbeddingScheme,
    face2: FacialWalk | Sequence[Dart],
    suffix: str = "'",
) -> EmbeddingScheme:
    """Identify a facial triangle of ``s1`` with one of ``s2`` (corner ``i`` to corner ``i``).

    The faces themselves disappear and ``s2`` is mirrored, so the result is a sphere
    triangulation in which the identified triangle separates the two halves. Edges of
    ``s1`` keep their ids; the remaining edges of ``s2`` follow in order. Labels of
    ``s2`` that clash with ``s1`` get ``suffix`` appended.
    """
    for s in (s1, s2):
        if not s.all_positive or not is_sphere_triangulation(s):
            raise PreconditionViolated("triangulation", "gluing needs all-positive sphere triangulations")
    h = positive_walk(s1, face1)
    k = positive_walk(s2, face2)
    if len(h) != 3 or len(k) != 3:
        raise PreconditionViolated("triangle", "gluing needs two triangular faces")

    g1, g2 = s1.graph, s2.graph
    p = [g1.vertex_of(d) for d in h]
    q = [g2.vertex_of(d) for d in k]
    dropped = {d.edge for d in k}

    vertex_map = {q[i]: p[i] for i in range(3)}
    labels = list(g1.labels)
    for v in g2.vertices:
        if v not in vertex_map:
            label = g2.labels[v]
            while label in labels:
                label += suffix
            vertex_map[v] = len(labels)
            labels.append(label)

    edge_map = {}
    ends = list(g1.ends)
    for e, (a, b) in enumerate(g2.ends):
        if e not in dropped:
            edge_map[e] = len(ends)
            ends.append((vertex_map[a], vertex_map[b]))

    def moved(d: Dart) -> Dart:
        return Dart(edge_map[d.edge], d.end)

    rotation: list[list[Dart]] = [list(r) for r in s1.rotation]
    for i in range(3):
        r1 = list(s1.rotation[p[i]])
        start = r1.index(h[i])
        cycle = r1[start:] + r1[:start]
        assert cycle[-1] == h[i - 1].partner()
        r2 = list(s2.rotation[q[i]])
        start = r2.index(k[i])
        between = (r2[start:] + r2[:start])[1:-1]
        rotation[p[i]] = cycle + [moved(d) for d in reversed(between)]
    for v in g2.vertices:
        if v not in q:
            rotation.append([moved(d) for d in reversed(s2.rotation[v])])

    glued = EmbeddingScheme(Multigraph(labels, ends), rotation)
    if not is_sphere_triangulation(glued):
        raise InvalidScheme("Gluing did not produce a sphere triangulation")
    logger.debug(f"Glued triangulations into n={glued.graph.n}, m={glued.graph.m}")
    return glued


OCTAHEDRON_LABELS = ("a", "b", "c", "x", "y", "z")


def octahedron_scheme() -> EmbeddingScheme:
    """Octahedron with ``x, y, z`` opposite ``a, b, c``; ``abc`` is a face."""
    points = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]
    edges = [(u, w) for u in range(6) for w in range(u + 1, 6) if w != u + 3]
    return scheme_from_coordinates(OCTAHEDRON_LABELS, edges, points)


def face_on(s: EmbeddingScheme, labels: Sequence[str]) -> FacialWalk:
    """The least face whose vertex set is exactly ``labels``."""
    wanted = {s.graph.index(label) for label in labels}
    for face in trace_faces(s):
        if set(face.vertices(s.graph)) == wanted and len(face) == len(wanted):
            return face
    raise PreconditionViolated("face", f"no face on {sorted(labels)}")


def double_octahedron_scheme() -> tuple[EmbeddingScheme, tuple[int, ...]]:
    """Two octahedra glued along ``abc`` (n=9, m=21) and the edge ids of ``abc``."""
    octahedron = octahedron_scheme()
    face = face_on(octahedron, ("a", "b", "c"))
    glued = glue_along_triangle(octahedron, face, octahedron, face)
    return glued, tuple(sorted(face.edges()))


def lens_scheme() -> EmbeddingScheme:
    """A 2-cycle ``uv`` (edges 0 and 1) with ``x`` inside the lens and ``y`` outside: n=4, m=6."""
    g = Multigraph(
        ["u", "v", "x", "y"],
        [(0, 1), (0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
    )
    return EmbeddingScheme(
        g,
        [
            [Dart(2, 0), Dart(0, 0), Dart(4, 0), Dart(1, 0)],
            [Dart(5, 0), Dart(0, 1), Dart(3, 0), Dart(1, 1)],
            [Dart(3, 1), Dart(2, 1)],
            [Dart(4, 1), Dart(5, 1)],
        ],
    )
